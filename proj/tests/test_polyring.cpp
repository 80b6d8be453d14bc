#include "support.hpp"

#include <algorithm>

using namespace backflow;
using namespace testing_support;

namespace {

const cplx I{0.0, 1.0};

void expect_coeffs(const Poly& p, std::vector<cplx> want, double tol = 1e-15)
{
    ASSERT_EQ(p.coeffs().size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k)
        EXPECT_NEAR(std::abs(p.coeff(k) - want[k]), 0.0, tol) << "k=" << k;
}

Poly real_poly_from(const std::vector<double>& roots)
{
    std::vector<Root> r;
    for (double x : roots)
        r.push_back({cplx{x, 0.0}, 1});
    return poly_from_roots(r);
}

} // namespace

TEST(PolyFromRoots, EmptyProductIsOne)
{
    expect_coeffs(poly_from_roots({}), {1.0});
}

TEST(PolyFromRoots, SimpleAndDoubleRoot)
{
    const std::vector<Root> simple{{I, 1}};
    expect_coeffs(poly_from_roots(simple), {-I, 1.0});
    const std::vector<Root> twice{{-I, 2}};
    expect_coeffs(poly_from_roots(twice), {-1.0, 2.0 * I, 1.0});
}

TEST(PolyEval, Values)
{
    EXPECT_EQ(poly_eval(Poly({-I, 1.0}), I), cplx{0.0});
    EXPECT_EQ(poly_eval(Poly({1.0}), cplx{3.7, -2.0}), cplx{1.0});
    EXPECT_EQ(poly_eval(Poly({-1.0, 2.0 * I, 1.0}), 0.0), cplx{-1.0});
}

TEST(Poly, ArithmeticAndDegree)
{
    const Poly a({1.0, 2.0});
    const Poly b({-I, 0.0, 3.0});
    EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
    const Poly s = a + b;
    expect_coeffs(s, {1.0 - I, 2.0, 3.0});
    expect_coeffs(b - b, {0.0});
    EXPECT_TRUE((b - b).is_zero());
    expect_coeffs(b.derivative(), {0.0, 6.0});
    expect_coeffs(Poly::constant(4.0).derivative(), {0.0});
}

TEST(Poly, TrailingNoiseIsStripped)
{
    const Poly p({1.0, 2.0, 1e-17});
    EXPECT_EQ(p.degree(), 1);
    EXPECT_NE(p.leading(), cplx{0.0});
}

TEST(PolyFromRoots, PropertyEvaluatesToZeroAtRoots)
{
    std::mt19937 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Root> roots;
        const int count = uniform_int(rng, 1, 8);
        for (int i = 0; i < count; ++i)
            roots.push_back({cplx{uniform(rng, -3, 3), uniform(rng, -3, 3)}, uniform_int(rng, 1, 3)});
        const Poly p = poly_from_roots(roots);
        for (const auto& r : roots) {
            const double bound = 1e-10 * p.max_abs_coeff() * std::pow(1.0 + std::abs(r.position), p.degree());
            EXPECT_LT(std::abs(p(r.position)), bound);
        }
    }
}

TEST(SeriesQuotient, GeometricSeries)
{
    const Series one = Series::from_poly(Poly({1.0}), 0.0, 4);
    const Series den = Series::from_poly(Poly({1.0, -1.0}), 0.0, 4);
    const Series q = series_quotient(one, den, 4);
    for (std::size_t k = 0; k < 4; ++k)
        EXPECT_NEAR(std::abs(q[k] - 1.0), 0.0, 1e-15);
}

TEST(SeriesQuotient, BinomialCoefficientsOfMultipole)
{
    // z/(z-a)^n
    const double a = 1.5;
    const int n = 3;
    const std::vector<Root> pole{{cplx{a, 0.0}, n}};
    const Series num = Series::from_poly(Poly({0.0, 1.0}), 0.0, 6);
    const Series den = Series::from_poly(poly_from_roots(pole), 0.0, 6);
    const Series q = series_quotient(num, den, 6);
    for (int k = 1; k <= 4; ++k) {
        const double binom = std::tgamma(n + k - 1) / (std::tgamma(k) * std::tgamma(n));
        const double want = -binom / std::pow(-a, n - 1) / std::pow(a, k);
        EXPECT_NEAR(q[static_cast<std::size_t>(k)].real(), want, 1e-14) << "k=" << k;
    }
}

TEST(SeriesQuotient, IdentityAboutShiftedCenter)
{
    const std::vector<Root> twice{{-I, 2}};
    const Poly p = poly_from_roots(twice);
    const Series s = Series::from_poly(p, 0.3, 3);
    const Series q = series_quotient(s, s, 3);
    EXPECT_NEAR(std::abs(q[0] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(q[1]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(q[2]), 0.0, 1e-15);
}

TEST(SeriesQuotient, Errors)
{
    const Series num = Series::from_poly(Poly({1.0}), 0.0, 3);
    const Series den = Series::from_poly(Poly({0.0, 1.0}), 0.0, 3);
    EXPECT_THROW(series_quotient(num, den, 3), ZeroLeadingDenominator);
    EXPECT_THROW(series_quotient(num, Series::from_poly(Poly({1.0, 1.0}), 1.0, 3), 3), SpecViolation);
    EXPECT_THROW(series_quotient(num, num, 0), SpecViolation);
}

TEST(SeriesQuotient, PropertyRecoversFactor)
{
    std::mt19937 rng(202);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<cplx> fc, gc;
        for (int i = 0, d = uniform_int(rng, 0, 6); i <= d; ++i)
            fc.emplace_back(uniform(rng, -1, 1), uniform(rng, -1, 1));
        for (int i = 0, d = uniform_int(rng, 0, 6); i <= d; ++i)
            gc.emplace_back(uniform(rng, -1, 1), uniform(rng, -1, 1));
        gc[0] += cplx{1.0, 0.0};
        const Poly f(fc), g(gc);
        const std::size_t K = 8;
        const Series q = series_quotient(Series::from_poly(f * g, 0.0, K), Series::from_poly(g, 0.0, K), K);
        const Series fs = Series::from_poly(f, 0.0, K);
        double scale = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            scale = std::max(scale, std::abs(fs[k]));
        for (std::size_t k = 0; k < K; ++k)
            EXPECT_LT(std::abs(q[k] - fs[k]), 1e-12 * scale * 10) << "trial " << trial << " k=" << k;
    }
}

TEST(RealRoots, Quadratics)
{
    const auto r = real_roots(Poly({-1.0 / 14.0, 0.0, 1.0}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[0].value, -1.0 / std::sqrt(14.0), 1e-15);
    EXPECT_NEAR(r[1].value, 1.0 / std::sqrt(14.0), 1e-15);
    EXPECT_TRUE(real_roots(Poly({1.0, 0.0, 1.0})).empty());
}

TEST(RealRoots, Multiplicities)
{
    const auto cube = real_roots(Poly({0.0, 0.0, 0.0, 1.0}));
    ASSERT_EQ(cube.size(), 1u);
    EXPECT_EQ(cube[0].value, 0.0);
    EXPECT_EQ(cube[0].multiplicity, 3);

    const std::vector<Root> roots{{1.0, 3}, {-2.0, 2}, {0.5, 1}};
    const auto r = real_roots(poly_from_roots(roots));
    ASSERT_EQ(r.size(), 3u);
    EXPECT_NEAR(r[0].value, -2.0, 1e-6);
    EXPECT_EQ(r[0].multiplicity, 2);
    EXPECT_NEAR(r[1].value, 0.5, 1e-10);
    EXPECT_EQ(r[1].multiplicity, 1);
    EXPECT_NEAR(r[2].value, 1.0, 1e-5);
    EXPECT_EQ(r[2].multiplicity, 3);
}

TEST(RealRoots, Errors)
{
    EXPECT_THROW(real_roots(Poly({1.0, I})), SpecViolation);
    EXPECT_THROW(real_roots(Poly({2.0})), DegreeZero);
}

TEST(RealRoots, PropertyRecoversSeparatedRoots)
{
    std::mt19937 rng(303);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> xs;
        const int count = uniform_int(rng, 1, 10);
        while (static_cast<int>(xs.size()) < count) {
            const double x = uniform(rng, -10, 10);
            if (std::all_of(xs.begin(), xs.end(), [&](double y) { return std::abs(x - y) > 1e-3; }))
                xs.push_back(x);
        }
        std::sort(xs.begin(), xs.end());
        // a complex pair that must not show up
        Poly p = real_poly_from(xs) * Poly({uniform(rng, 1, 4), 0.0, 1.0});
        const auto r = real_roots(p);
        ASSERT_EQ(r.size(), xs.size()) << "trial " << trial;
        for (std::size_t i = 0; i < xs.size(); ++i)
            EXPECT_NEAR(r[i].value, xs[i], 1e-8) << "trial " << trial;
    }
}

TEST(ComplexRoots, PropertyRecoversRoots)
{
    std::mt19937 rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Root> roots;
        const int count = uniform_int(rng, 1, 9);
        for (int i = 0; i < count; ++i)
            roots.push_back({cplx{uniform(rng, -3, 3), uniform(rng, -3, 3)}, 1});
        const auto found = complex_roots(poly_from_roots(roots));
        ASSERT_EQ(found.size(), roots.size());
        for (const auto& r : roots) {
            double best = 1e300;
            for (const auto& z : found)
                best = std::min(best, std::abs(z - r.position));
            EXPECT_LT(best, 1e-7);
        }
    }
}
