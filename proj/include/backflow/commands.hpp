#pragma once

// Implementations behind the `backflow` command-line tool. Each command
// returns a process exit code:
//   0 success, 1 invalid input, 2 numerical failure, 3 verification failure.

#include "backflow/backflow.hpp"
#include "backflow/descriptor.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace backflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitCheckFailed = 3;

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// output helpers

inline std::string fmt17(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(std::vector<std::string> header) : width_(header.size())
    {
        row_strings(header);
    }

    void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

    void row(const std::vector<double>& values)
    {
        std::vector<std::string> s;
        for (double v : values)
            s.push_back(fmt17(v));
        row_strings(s);
    }

    const std::string& str() const noexcept { return text_; }

private:
    void row_strings(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    std::size_t width_;
    std::string text_;
};

/// Writes through a sibling temporary file and renames it into place.
inline void write_atomic(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out)
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

inline json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline json bound_json(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

inline json report_json(const BackflowReport& rep)
{
    json iv = json::array();
    for (const auto& i : rep.intervals)
        iv.push_back({{"lo", bound_json(i.lo)}, {"hi", bound_json(i.hi)}, {"degenerate", i.degenerate}});
    return {{"intervals", iv},
            {"min_wavenumber", rep.min_wavenumber},
            {"argmin_wavenumber", rep.argmin_wavenumber},
            {"min_current", rep.min_current},
            {"argmin_current", rep.argmin_current},
            {"has_degenerate", rep.has_degenerate()}};
}

inline json spectrum_json(const MomentumSpectrumLine& sp)
{
    json terms = json::array();
    for (const auto& t : sp.terms) {
        json c = json::array();
        for (const auto& v : t.coeffs)
            c.push_back(complex_json(v));
        terms.push_back({{"pole", complex_json(t.pole)}, {"coeffs", c}});
    }
    return {{"kind", "line"}, {"order_gap", sp.order_gap}, {"terms", terms}};
}

inline json spectrum_json(const MomentumSpectrumRing& sp)
{
    json coeffs = json::array();
    for (int k = 1; k <= sp.k_max(); ++k) {
        const cplx c = sp.coefficient(k);
        coeffs.push_back({{"k", k}, {"momentum", sp.momentum(k)}, {"re", c.real()}, {"im", c.imag()},
                          {"abs", std::abs(c)}});
    }
    return {{"kind", "ring"}, {"period", sp.period}, {"count", sp.k_max()}, {"coefficients", coeffs}};
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return xs;
}

inline double nan() { return std::numeric_limits<double>::quiet_NaN(); }

// ---------------------------------------------------------------------------
// sampled fields

struct FieldRow {
    double x, density, wavenumber, current;
    cplx psi;
};

inline std::vector<FieldRow> sample_field(const LineWaveFunction& wf, const std::vector<double>& xs)
{
    std::vector<FieldRow> rows;
    for (double x : xs) {
        const cplx psi = wf(x);
        double k = nan();
        try {
            k = local_wavenumber(wf, x);
        } catch (const SingularPoint&) {
        }
        rows.push_back({x, std::norm(psi), k, probability_current(wf, x), psi});
    }
    return rows;
}

inline std::vector<FieldRow> sample_field(const RingWaveFunction& wf, const std::vector<double>& xs)
{
    std::vector<FieldRow> rows;
    for (double x : xs) {
        const cplx psi = wf(x);
        double k = nan();
        try {
            k = ring_wavenumber(wf, x);
        } catch (const SingularPoint&) {
        }
        rows.push_back({x, std::norm(psi), k, ring_current(wf, x), psi});
    }
    return rows;
}

inline Csv field_csv(const std::vector<FieldRow>& rows)
{
    Csv csv({"x", "density", "wavenumber", "current"});
    for (const auto& r : rows)
        csv.row({r.x, r.density, r.wavenumber, r.current});
    return csv;
}

inline double line_spectrum_extent(const LineWaveFunction& wf)
{
    double w = std::numeric_limits<double>::infinity();
    for (const auto& b : wf.spec().poles())
        w = std::min(w, std::abs(b.position.imag()));
    return 20.0 / w;
}

inline Csv line_spectrum_csv(const MomentumSpectrumLine& sp, double pmax, std::size_t samples)
{
    Csv csv({"p", "abs_spectrum", "arg_spectrum"});
    for (double p : linspace(0.0, pmax, samples)) {
        const cplx v = eval_spectrum(sp, p);
        csv.row({p, std::abs(v), std::arg(v)});
    }
    return csv;
}

inline Csv ring_spectrum_csv(const MomentumSpectrumRing& sp)
{
    Csv csv({"k", "abs_ck", "arg_ck"});
    for (int k = 1; k <= sp.k_max(); ++k) {
        const cplx c = sp.coefficient(k);
        csv.row({static_cast<double>(k), std::abs(c), std::arg(c)});
    }
    return csv;
}

// ---------------------------------------------------------------------------
// error funnel

template <class Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_numerical(e.kind()) ? kExitNumerical : kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

inline fs::path sibling(const fs::path& output, const std::string& suffix)
{
    fs::path p = output.parent_path() / output.stem();
    p += suffix;
    return p;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
    std::string input;
    fs::path output = "field.csv";
    std::optional<std::pair<double, double>> range;
    std::size_t samples = 2001;
};

inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err)
{
    if (opt.samples < 2) {
        err << "error: --samples must be >= 2\n";
        return kExitInvalid;
    }
    return guarded(err, [&] {
        const auto desc = load_descriptor(opt.input);
        json side;
        side["descriptor"] = to_json(desc);
        if (desc.kind == WaveFunctionDescriptor::Kind::Line) {
            const auto wf = make_line_wavefunction(desc.spec());
            const auto [lo, hi] = opt.range.value_or(std::pair{-5.0, 5.0});
            const auto rows = sample_field(wf, linspace(lo, hi, opt.samples));
            const auto sp = momentum_spectrum(wf);
            write_atomic(opt.output, field_csv(rows).str());
            write_atomic(sibling(opt.output, ".spectrum.csv"),
                         line_spectrum_csv(sp, line_spectrum_extent(wf), opt.samples).str());
            side["norm_constant"] = wf.norm_constant();
            side["backflow"] = report_json(backflow_intervals(wf));
            side["spectrum"] = spectrum_json(sp);
        } else {
            const auto wf = make_ring_wavefunction(desc.spec(), desc.period);
            const double L = desc.period;
            const auto [lo, hi] = opt.range.value_or(std::pair{-0.5 * L, 0.5 * L});
            const auto rows = sample_field(wf, linspace(lo, hi, opt.samples));
            const auto sp = ring_spectrum(wf);
            write_atomic(opt.output, field_csv(rows).str());
            write_atomic(sibling(opt.output, ".spectrum.csv"), ring_spectrum_csv(sp).str());
            side["norm_constant"] = wf.norm_constant();
            side["backflow"] = report_json(ring_backflow_intervals(wf));
            side["spectrum"] = spectrum_json(sp);
        }
        write_atomic(sibling(opt.output, ".json"), side.dump(2) + "\n");
        out << "wrote " << opt.output.string() << '\n';
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// design

/// "exp:KAPPA" for exp(i KAPPA x), or "taylor:re,im;re,im;..." for raw
/// Taylor coefficients p_0, p_1, ...
inline Profile parse_profile(const std::string& text, int m)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw SpecViolation("profile must be 'exp:KAPPA' or 'taylor:re,im;...'");
    const std::string family = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (family == "exp") {
        double kappa;
        try {
            std::size_t used = 0;
            kappa = std::stod(body, &used);
            if (used != body.size())
                throw std::invalid_argument(body);
        } catch (const std::exception&) {
            throw SpecViolation("cannot parse exp profile wave number '" + body + "'");
        }
        return Profile::exponential(kappa, static_cast<std::size_t>(std::max(m, 0)) + 1);
    }
    if (family == "taylor") {
        std::vector<cplx> coeffs;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ';')) {
            double re = 0.0, im = 0.0;
            char comma = 0;
            std::stringstream is(item);
            if (!(is >> re))
                throw SpecViolation("cannot parse Taylor coefficient '" + item + "'");
            if (is >> comma) {
                if (comma != ',' || !(is >> im))
                    throw SpecViolation("cannot parse Taylor coefficient '" + item + "'");
            }
            coeffs.emplace_back(re, im);
        }
        return Profile::from_taylor(std::move(coeffs));
    }
    throw SpecViolation("unknown profile family '" + family + "'");
}

struct DesignOptions {
    std::string profile = "exp:-1";
    std::vector<Root> poles;
    int m = 8;
    double x0 = 3.141592653589793;
    fs::path output = "design.csv";
    std::optional<std::pair<double, double>> range;
    std::size_t samples = 2001;
};

struct DesignData {
    DesignReport report;
    std::vector<FieldRow> rows;
    std::vector<cplx> reference; // N p(x) on the same grid
};

inline DesignData run_design(const PadeProblem& pb, const std::vector<double>& xs)
{
    DesignData d{design_wavefunction(pb), {}, {}};
    d.rows = sample_field(d.report.wavefunction, xs);
    const double N = d.report.wavefunction.norm_constant();
    for (double x : xs)
        d.reference.push_back(N * pb.profile(x));
    return d;
}

inline json design_json(const DesignData& d, const PadeProblem& pb)
{
    const auto& rep = d.report;
    json alpha = json::array();
    for (const auto& c : rep.numerator.coeffs())
        alpha.push_back(complex_json(c));
    WaveFunctionDescriptor desc;
    desc.zeros.assign(rep.wavefunction.spec().zeros().begin(), rep.wavefunction.spec().zeros().end());
    desc.poles.assign(rep.wavefunction.spec().poles().begin(), rep.wavefunction.spec().poles().end());
    desc.gain = rep.wavefunction.spec().gain();
    return {{"m", pb.numerator_degree},
            {"x0", pb.half_width},
            {"numerator_coefficients", alpha},
            {"descriptor", to_json(desc)},
            {"norm_constant", rep.wavefunction.norm_constant()},
            {"max_error_on_interval", rep.max_error_on_interval},
            {"amplitude_ratio", rep.amplitude_ratio},
            {"peak_location", rep.peak_location},
            {"backflow", report_json(backflow_intervals(rep.wavefunction))}};
}

inline int cmd_design(const DesignOptions& opt, std::ostream& out, std::ostream& err)
{
    if (opt.samples < 2) {
        err << "error: --samples must be >= 2\n";
        return kExitInvalid;
    }
    return guarded(err, [&] {
        PadeProblem pb{parse_profile(opt.profile, opt.m), opt.m, opt.poles, opt.x0};
        validate_pade_problem(pb);
        const auto [lo, hi] = opt.range.value_or(std::pair{-2.0 * opt.x0, 2.0 * opt.x0});
        const auto data = run_design(pb, linspace(lo, hi, opt.samples));
        Csv csv({"x", "density", "wavenumber", "current", "re_psi", "im_psi", "re_profile", "im_profile"});
        for (std::size_t i = 0; i < data.rows.size(); ++i) {
            const auto& r = data.rows[i];
            csv.row({r.x, r.density, r.wavenumber, r.current, r.psi.real(), r.psi.imag(),
                     data.reference[i].real(), data.reference[i].imag()});
        }
        write_atomic(opt.output, csv.str());
        write_atomic(sibling(opt.output, ".json"), design_json(data, pb).dump(2) + "\n");
        out << "wrote " << opt.output.string() << '\n';
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// figure

inline constexpr std::size_t kFigureSamples = 2001;

inline void write_panels(const fs::path& dir, const std::string& tag, const std::vector<FieldRow>& rows,
                         bool log_current)
{
    Csv density({"x", "density"});
    Csv wavenumber({"x", "wavenumber"});
    Csv current = log_current ? Csv({"x", "current", "abs_current"}) : Csv({"x", "current"});
    for (const auto& r : rows) {
        density.row({r.x, r.density});
        wavenumber.row({r.x, r.wavenumber});
        if (log_current)
            current.row({r.x, r.current, std::abs(r.current)});
        else
            current.row({r.x, r.current});
    }
    write_atomic(dir / (tag + "a_density.csv"), density.str());
    write_atomic(dir / (tag + "b_wavenumber.csv"), wavenumber.str());
    write_atomic(dir / (tag + "c_current.csv"), current.str());
}

inline int figure_line_example(const fs::path& dir)
{
    const auto wf = make_line_wavefunction(RationalSpec::make({{cplx{0.0, -0.25}, 1}}, {{cplx{0.0, -1.0}, 2}}));
    const auto rows = sample_field(wf, linspace(-5.0, 5.0, kFigureSamples));
    write_panels(dir, "fig1", rows, false);
    const auto sp = momentum_spectrum(wf);
    write_atomic(dir / "fig1d_spectrum.csv", line_spectrum_csv(sp, 20.0, kFigureSamples).str());
    json j{{"figure", 1},
           {"parameters", {{"a", complex_json(cplx{0.0, -0.25})}}},
           {"norm_constant", wf.norm_constant()},
           {"backflow", report_json(backflow_intervals(wf))},
           {"spectrum", spectrum_json(sp)}};
    write_atomic(dir / "fig1.json", j.dump(2) + "\n");
    return kExitOk;
}

inline int figure_ring_example(const fs::path& dir, int id)
{
    const RationalSpec spec = id == 2 ? RationalSpec::make({{0.0, 1}, {std::sqrt(2.0), 1}}, {})
                                      : RationalSpec::make({{0.0, 1}}, {{1.5, 3}});
    const auto wf = make_ring_wavefunction(spec, 1.0);
    const std::string tag = "fig" + std::to_string(id);
    write_panels(dir, tag, sample_field(wf, linspace(-0.5, 0.5, kFigureSamples)), id == 3);
    const auto sp = ring_spectrum(wf);
    write_atomic(dir / (tag + "d_spectrum.csv"), ring_spectrum_csv(sp).str());
    json params = id == 2 ? json{{"a", std::sqrt(2.0)}} : json{{"a", 1.5}, {"n", 3}};
    json j{{"figure", id},
           {"parameters", params},
           {"norm_constant", wf.norm_constant()},
           {"backflow", report_json(ring_backflow_intervals(wf))},
           {"spectrum", spectrum_json(sp)}};
    write_atomic(dir / (tag + ".json"), j.dump(2) + "\n");
    return kExitOk;
}

inline int figure_design_example(const fs::path& dir)
{
    const double pi = std::numbers::pi;
    const auto xs = linspace(-2.0 * pi, 2.0 * pi, kFigureSamples);
    json runs = json::array();
    for (auto [b, label, panels] : {std::tuple{3.0 * pi, "b3pi", "ab"}, std::tuple{15.0 * pi, "b15pi", "cd"}}) {
        PadeProblem pb{Profile::exponential(-1.0, 9), 8, {Root{cplx{0.0, -b}, 9}}, pi};
        const auto data = run_design(pb, xs);
        Csv density({"x", "density", "reference_density"});
        Csv parts({"x", "re_psi", "im_psi", "re_reference", "im_reference"});
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto& r = data.rows[i];
            const cplx ref = data.reference[i];
            density.row({r.x, r.density, std::norm(ref)});
            parts.row({r.x, r.psi.real(), r.psi.imag(), ref.real(), ref.imag()});
        }
        const std::string a = std::string("fig4") + panels[0] + "_density_" + label + ".csv";
        const std::string c = std::string("fig4") + panels[1] + "_wavefunction_" + label + ".csv";
        write_atomic(dir / a, density.str());
        write_atomic(dir / c, parts.str());
        json run = design_json(data, pb);
        run["b"] = b;
        runs.push_back(run);
    }
    write_atomic(dir / "fig4.json", json{{"figure", 4}, {"runs", runs}}.dump(2) + "\n");
    return kExitOk;
}

inline int cmd_figure(int id, const fs::path& dir, std::ostream& out, std::ostream& err)
{
    if (id < 1 || id > 4) {
        err << "error: unknown figure id " << id << " (expected 1..4)\n";
        return kExitInvalid;
    }
    return guarded(err, [&] {
        int rc;
        if (id == 1)
            rc = figure_line_example(dir);
        else if (id == 4)
            rc = figure_design_example(dir);
        else
            rc = figure_ring_example(dir, id);
        out << "figure " << id << " data written to " << dir.string() << '\n';
        return rc;
    });
}

// ---------------------------------------------------------------------------
// verify

struct CheckRow {
    std::string name;
    double value;
    double threshold;
    bool pass;
};

inline void print_checks(const std::vector<CheckRow>& rows, std::ostream& out)
{
    out << std::left << std::setw(34) << "check" << std::setw(14) << "value" << std::setw(14)
        << "threshold" << "result\n";
    for (const auto& r : rows) {
        char v[32], t[32];
        std::snprintf(v, sizeof v, "%.3e", r.value);
        std::snprintf(t, sizeof t, "%.3e", r.threshold);
        out << std::left << std::setw(34) << r.name << std::setw(14) << v << std::setw(14) << t
            << (r.pass ? "PASS" : "FAIL") << '\n';
    }
}

// Deterministic sample points in [lo, hi] (fixed-seed LCG, no shared state).
inline std::vector<double> probe_points(double lo, double hi, std::size_t n, unsigned seed)
{
    std::vector<double> xs;
    std::uint64_t s = 0x9E3779B97F4A7C15ull ^ seed;
    for (std::size_t i = 0; i < n; ++i) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        const double u = static_cast<double>(s >> 11) * 0x1.0p-53;
        xs.push_back(lo + (hi - lo) * u);
    }
    return xs;
}

inline std::vector<CheckRow> verify_line(const LineWaveFunction& wf, double tol)
{
    std::vector<CheckRow> rows;
    const auto sp = momentum_spectrum(wf);
    constexpr double oracle_tol = 1e-10;

    double peak = 0.0;
    const double pmax = line_spectrum_extent(wf);
    for (double p : linspace(1e-6, pmax, 4001))
        peak = std::max(peak, std::abs(eval_spectrum(sp, p)));

    double neg = 0.0;
    for (double p : probe_points(-10.0, -0.1, 20, 1))
        neg = std::max(neg, std::abs(oracle::fourier_quadrature(wf, p, oracle_tol).value));
    rows.push_back({"spectrum positivity (p<0)", neg / peak, tol, neg / peak < tol});

    double rel = 0.0;
    for (double p : probe_points(0.1, 10.0, 20, 2)) {
        const cplx a = eval_spectrum(sp, p);
        const cplx q = oracle::fourier_quadrature(wf, p, oracle_tol).value;
        rel = std::max(rel, std::abs(a - q) / std::max(std::abs(q), 1e-300));
    }
    rows.push_back({"analytic vs quadrature spectrum", rel, tol, rel < tol});

    const double norm = oracle::norm_quadrature(wf, oracle::Domain::line(), oracle_tol).value.real();
    rows.push_back({"normalization", std::abs(norm - 1.0), tol, std::abs(norm - 1.0) < tol});

    double fd = 0.0;
    for (double x : probe_points(-5.0, 5.0, 100, 3)) {
        try {
            fd = std::max(fd, std::abs(local_wavenumber(wf, x) - oracle::phase_gradient_fd(wf, x, 1e-5)));
        } catch (const SingularPoint&) {
        }
    }
    const double fd_tol = std::max(tol, 1e-4);
    rows.push_back({"phase gradient vs fd", fd, fd_tol, fd < fd_tol});
    return rows;
}

// The single-zero-at-origin, single-real-pole family with a closed-form N.
inline std::optional<std::pair<double, int>> multipole_ring_parameters(const RationalSpec& s)
{
    if (s.zeros().size() != 1 || s.poles().size() != 1 || s.gain() != cplx{1.0})
        return std::nullopt;
    const Root& z = s.zeros()[0];
    const Root& b = s.poles()[0];
    if (std::abs(z.position) != 0.0 || z.multiplicity != 1 || b.position.imag() != 0.0 || !(b.position.real() > 1.0))
        return std::nullopt;
    return std::pair{b.position.real(), b.multiplicity};
}

inline std::vector<CheckRow> verify_ring(const RingWaveFunction& wf, double tol)
{
    std::vector<CheckRow> rows;
    const auto sp = ring_spectrum(wf);
    const double L = wf.period();

    double peak = 0.0;
    for (const auto& c : sp.coeffs)
        peak = std::max(peak, std::abs(c));
    double neg = 0.0;
    for (int k = -20; k <= 0; ++k)
        neg = std::max(neg, std::abs(oracle::ring_fourier_coefficient(wf, L, k)));
    rows.push_back({"spectrum positivity (k<=0)", neg / peak, tol, neg / peak < tol});

    double dft = 0.0;
    for (int k = 1; k <= std::min(sp.k_max(), 50); ++k)
        dft = std::max(dft, std::abs(sp.coefficient(k) - oracle::ring_fourier_coefficient(wf, L, k)));
    rows.push_back({"coefficients vs trapezoid DFT", dft, tol, dft < tol});

    double parseval = 0.0;
    for (const auto& c : sp.coeffs)
        parseval += std::norm(c);
    rows.push_back({"Parseval sum", std::abs(parseval - 1.0), tol, std::abs(parseval - 1.0) < tol});

    const double norm = oracle::norm_quadrature(wf, oracle::Domain::ring(L), 1e-12).value.real();
    rows.push_back({"normalization (trapezoid)", std::abs(norm - 1.0), tol, std::abs(norm - 1.0) < tol});

    double fd = 0.0;
    for (double x : probe_points(-0.5 * L, 0.5 * L, 100, 4)) {
        try {
            fd = std::max(fd, std::abs(ring_wavenumber(wf, x) - oracle::phase_gradient_fd(wf, x, 1e-5 * L)));
        } catch (const SingularPoint&) {
        }
    }
    const double fd_tol = std::max(tol, 1e-4);
    rows.push_back({"phase gradient vs fd", fd, fd_tol, fd < fd_tol});

    if (auto mp = multipole_ring_parameters(wf.spec())) {
        const double closed = oracle::multipole_ring_norm(mp->first, mp->second, L);
        const double r = std::abs(closed - wf.norm_constant()) / closed;
        rows.push_back({"closed-form multipole N", r, tol, r < tol});
    }
    return rows;
}

inline int cmd_verify(const std::string& input, double tol, std::ostream& out, std::ostream& err)
{
    if (!(tol > 0.0)) {
        err << "error: --tol must be positive\n";
        return kExitInvalid;
    }
    return guarded(err, [&] {
        const auto desc = load_descriptor(input);
        std::vector<CheckRow> rows;
        if (desc.kind == WaveFunctionDescriptor::Kind::Line)
            rows = verify_line(make_line_wavefunction(desc.spec()), tol);
        else
            rows = verify_ring(make_ring_wavefunction(desc.spec(), desc.period), tol);
        print_checks(rows, out);
        const bool ok = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
        return ok ? kExitOk : kExitCheckFailed;
    });
}

} // namespace backflow::cli
