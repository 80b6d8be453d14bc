#include "support.hpp"

#include "backflow/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace backflow;
using namespace testing_support;
namespace fs = std::filesystem;
using nlohmann::json;

#ifndef BACKFLOW_SAMPLES_DIR
#define BACKFLOW_SAMPLES_DIR "samples"
#endif

namespace {

const std::string kSamples = BACKFLOW_SAMPLES_DIR;

std::string sample(const std::string& name) { return kSamples + "/" + name; }

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("backflow_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write_json(const std::string& name, const json& j)
    {
        const auto p = dir_ / name;
        std::ofstream(p) << j.dump();
        return p;
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::vector<std::string>* header = nullptr)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    if (header) {
        std::stringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ','))
            header->push_back(cell);
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::stringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ','))
            row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST(Descriptor, RoundTripIsBitwise)
{
    std::mt19937 rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        WaveFunctionDescriptor d;
        d.kind = trial % 2 ? WaveFunctionDescriptor::Kind::Ring : WaveFunctionDescriptor::Kind::Line;
        const auto spec = d.kind == WaveFunctionDescriptor::Kind::Line ? random_line_spec(rng) : random_ring_spec(rng);
        d.zeros.assign(spec.zeros().begin(), spec.zeros().end());
        d.poles.assign(spec.poles().begin(), spec.poles().end());
        if (d.kind == WaveFunctionDescriptor::Kind::Ring)
            d.period = uniform(rng, 0.1, 10.0);
        const auto again = parse_descriptor(json::parse(to_json(d).dump()));
        EXPECT_EQ(again, d);
        EXPECT_EQ(again.spec(), d.spec());
    }
}

TEST(Descriptor, ErrorsNameTheField)
{
    auto message = [](const json& j) {
        try {
            parse_descriptor(j);
        } catch (const SpecViolation& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(json{{"kind", "plane"}}).find("kind"), std::string::npos);
    EXPECT_NE(message(json{{"kind", "line"}, {"poles", {{{"re", 0}}}}}).find("im"), std::string::npos);
    EXPECT_NE(message(json{{"kind", "line"}, {"poles", {{{"re", 0}, {"im", -1}, {"mult", 0}}}}}).find("multiplicity"),
              std::string::npos);
    EXPECT_NE(message(json{{"kind", "ring"}, {"period", -1}}).find("period"), std::string::npos);
    EXPECT_NE(message(json::array()).find("object"), std::string::npos);
    EXPECT_THROW(load_descriptor("/nonexistent/descriptor.json"), SpecViolation);
}

TEST_F(CliTest, AnalyzeExample1CurrentSign)
{
    const auto csv = dir_ / "e1.csv";
    ASSERT_EQ(cli::cmd_analyze({sample("example1_line.json"), csv, std::nullopt, 2001}, out_, err_), 0);
    std::vector<std::string> header;
    const auto rows = read_csv(csv, &header);
    EXPECT_EQ(header, (std::vector<std::string>{"x", "density", "wavenumber", "current"}));
    ASSERT_EQ(rows.size(), 2001u);
    const double edge = 1.0 / std::sqrt(14.0);
    const double h = 10.0 / 2000.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double x = rows[i][0];
        if (i > 0) {
            EXPECT_GT(x, rows[i - 1][0]);
        }
        EXPECT_GE(rows[i][1], 0.0);
        if (std::abs(std::abs(x) - edge) < h)
            continue;
        EXPECT_EQ(rows[i][3] < 0.0, std::abs(x) < edge) << "x=" << x;
    }

    const auto side = json::parse(slurp(dir_ / "e1.json"));
    EXPECT_NEAR(side["norm_constant"].get<double>(), 0.774061722644652, 1e-12);
    ASSERT_EQ(side["backflow"]["intervals"].size(), 1u);
    EXPECT_NEAR(side["backflow"]["intervals"][0]["hi"].get<double>(), edge, 1e-12);
    EXPECT_EQ(side["spectrum"]["terms"].size(), 1u);

    std::vector<std::string> sh;
    const auto spectrum = read_csv(dir_ / "e1.spectrum.csv", &sh);
    EXPECT_EQ(sh, (std::vector<std::string>{"p", "abs_spectrum", "arg_spectrum"}));
    EXPECT_EQ(spectrum.size(), 2001u);
}

TEST_F(CliTest, AnalyzeRing)
{
    const auto csv = dir_ / "e2.csv";
    ASSERT_EQ(cli::cmd_analyze({sample("example2_ring.json"), csv, std::pair{-0.5, 0.5}, 101}, out_, err_), 0);
    const auto side = json::parse(slurp(dir_ / "e2.json"));
    EXPECT_EQ(side["spectrum"]["coefficients"].size(), 2u);
    std::vector<std::string> sh;
    const auto spectrum = read_csv(dir_ / "e2.spectrum.csv", &sh);
    EXPECT_EQ(sh, (std::vector<std::string>{"k", "abs_ck", "arg_ck"}));
    ASSERT_EQ(spectrum.size(), 2u);
    EXPECT_NEAR(spectrum[0][1] * spectrum[0][1], 2.0 / 3.0, 1e-14);
}

TEST_F(CliTest, AnalyzeEmitsNanAtRealZero)
{
    const auto d = write_json("z.json", {{"kind", "line"},
                                         {"zeros", {{{"re", 0}, {"im", 0}}}},
                                         {"poles", {{{"re", 0}, {"im", -1}, {"mult", 2}}}}});
    const auto csv = dir_ / "z.csv";
    ASSERT_EQ(cli::cmd_analyze({d.string(), csv, std::pair{-1.0, 1.0}, 3}, out_, err_), 0);
    const auto text = slurp(csv);
    EXPECT_NE(text.find("0,0,nan,0"), std::string::npos) << text;
}

TEST_F(CliTest, AnalyzeErrors)
{
    const auto no_poles = write_json("np.json", {{"kind", "line"}, {"zeros", json::array()}, {"poles", json::array()}});
    EXPECT_EQ(cli::cmd_analyze({no_poles.string(), dir_ / "a.csv", std::nullopt, 11}, out_, err_), 1);
    EXPECT_NE(err_.str().find("m < n"), std::string::npos);
    EXPECT_EQ(cli::cmd_analyze({sample("upper_pole_line.json"), dir_ / "a.csv", std::nullopt, 11}, out_, err_), 1);
    EXPECT_EQ(cli::cmd_analyze({sample("example1_line.json"), dir_ / "a.csv", std::nullopt, 1}, out_, err_), 1);
    EXPECT_EQ(cli::cmd_analyze({(dir_ / "missing.json").string(), dir_ / "a.csv", std::nullopt, 11}, out_, err_), 1);
    EXPECT_FALSE(fs::exists(dir_ / "a.csv"));
}

TEST_F(CliTest, DesignFigureConfigurations)
{
    cli::DesignOptions opt;
    opt.poles = {Root{cplx{0.0, -3.0 * pi}, 9}};
    opt.output = dir_ / "d3.csv";
    ASSERT_EQ(cli::cmd_design(opt, out_, err_), 0);
    std::vector<std::string> header;
    const auto rows = read_csv(opt.output, &header);
    EXPECT_EQ(header.size(), 8u);
    EXPECT_EQ(rows.front()[0], -2.0 * pi);
    const auto rep = json::parse(slurp(dir_ / "d3.json"));
    EXPECT_EQ(rep["numerator_coefficients"].size(), 9u);
    EXPECT_GT(rep["amplitude_ratio"].get<double>(), 1.0);

    opt.poles = {Root{cplx{0.0, -15.0 * pi}, 9}};
    opt.output = dir_ / "d15.csv";
    ASSERT_EQ(cli::cmd_design(opt, out_, err_), 0);
    const auto far = json::parse(slurp(dir_ / "d15.json"));
    EXPECT_LT(far["max_error_on_interval"].get<double>(), rep["max_error_on_interval"].get<double>());
}

TEST_F(CliTest, DesignErrors)
{
    cli::DesignOptions opt;
    opt.poles = {Root{cplx{0.0, -3.0 * pi}, 8}};
    opt.output = dir_ / "d.csv";
    EXPECT_EQ(cli::cmd_design(opt, out_, err_), 1);
    opt.poles = {Root{cplx{0.0, -3.0 * pi}, 9}};
    opt.profile = "sin:2";
    EXPECT_EQ(cli::cmd_design(opt, out_, err_), 1);
    opt.profile = "exp:abc";
    EXPECT_EQ(cli::cmd_design(opt, out_, err_), 1);
    opt.profile = "taylor:1,0;0,x";
    EXPECT_EQ(cli::cmd_design(opt, out_, err_), 1);
}

TEST(ParseProfile, Families)
{
    const auto e = cli::parse_profile("exp:2.5", 3);
    ASSERT_EQ(e.taylor.size(), 4u);
    EXPECT_NEAR(std::abs(e.taylor[1] - cplx{0.0, 2.5}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e(0.4) - std::polar(1.0, 1.0)), 0.0, 1e-15);
    const auto t = cli::parse_profile("taylor:1,0;0,-1;0.5", 2);
    ASSERT_EQ(t.taylor.size(), 3u);
    EXPECT_EQ(t.taylor[1], (cplx{0.0, -1.0}));
    EXPECT_EQ(t.taylor[2], (cplx{0.5, 0.0}));
}

TEST_F(CliTest, FigureFeaturesAndDeterminism)
{
    for (int id = 1; id <= 4; ++id)
        ASSERT_EQ(cli::cmd_figure(id, dir_, out_, err_), 0) << err_.str();
    for (const char* name : {"fig1a_density.csv", "fig1b_wavenumber.csv", "fig1c_current.csv", "fig1d_spectrum.csv"})
        EXPECT_TRUE(fs::exists(dir_ / name)) << name;

    const auto k = read_csv(dir_ / "fig1b_wavenumber.csv");
    std::vector<double> crossings;
    for (std::size_t i = 1; i < k.size(); ++i)
        if ((k[i - 1][1] < 0.0) != (k[i][1] < 0.0))
            crossings.push_back(0.5 * (k[i - 1][0] + k[i][0]));
    ASSERT_EQ(crossings.size(), 2u);
    EXPECT_NEAR(crossings[0], -0.26726, 0.005);
    EXPECT_NEAR(crossings[1], 0.26726, 0.005);

    std::vector<std::string> header;
    read_csv(dir_ / "fig3c_current.csv", &header);
    EXPECT_EQ(header.back(), "abs_current");
    const auto fig3 = json::parse(slurp(dir_ / "fig3.json"));
    EXPECT_NEAR(fig3["backflow"]["intervals"][0]["lo"].get<double>(), 0.27665, 1e-5);
    EXPECT_NEAR(fig3["backflow"]["intervals"][0]["hi"].get<double>(), 0.72335, 1e-5);

    const auto fig4 = json::parse(slurp(dir_ / "fig4.json"));
    ASSERT_EQ(fig4["runs"].size(), 2u);
    std::vector<std::string> h4;
    read_csv(dir_ / "fig4b_wavefunction_b3pi.csv", &h4);
    EXPECT_EQ(h4, (std::vector<std::string>{"x", "re_psi", "im_psi", "re_reference", "im_reference"}));

    const auto before = slurp(dir_ / "fig4a_density_b3pi.csv");
    ASSERT_EQ(cli::cmd_figure(4, dir_, out_, err_), 0);
    EXPECT_EQ(slurp(dir_ / "fig4a_density_b3pi.csv"), before);
    EXPECT_EQ(cli::cmd_figure(5, dir_, out_, err_), 1);
    EXPECT_EQ(cli::cmd_figure(0, dir_, out_, err_), 1);
}

TEST_F(CliTest, VerifySamples)
{
    EXPECT_EQ(cli::cmd_verify(sample("example1_line.json"), 1e-6, out_, err_), 0) << out_.str();
    EXPECT_EQ(cli::cmd_verify(sample("example2_ring.json"), 1e-6, out_, err_), 0) << out_.str();
    out_.str("");
    EXPECT_EQ(cli::cmd_verify(sample("example3_ring.json"), 1e-6, out_, err_), 0) << out_.str();
    EXPECT_NE(out_.str().find("closed-form multipole N"), std::string::npos);
    out_.str("");
    EXPECT_EQ(cli::cmd_verify(sample("upper_pole_line.json"), 1e-6, out_, err_), 1);
    EXPECT_EQ(out_.str(), "");
    EXPECT_EQ(cli::cmd_verify(sample("example1_line.json"), 0.0, out_, err_), 1);
}

TEST_F(CliTest, VerifyReportsCheckFailure)
{
    // tolerance far below what the finite-difference check can reach
    EXPECT_EQ(cli::cmd_verify(sample("example1_line.json"), 1e-300, out_, err_), 3);
    EXPECT_NE(out_.str().find("FAIL"), std::string::npos);
}

TEST(Format, SeventeenDigits)
{
    EXPECT_EQ(cli::fmt17(0.1), "0.10000000000000001");
    EXPECT_EQ(cli::fmt17(std::nan("")), "nan");
    EXPECT_EQ(cli::fmt17(-INFINITY), "-inf");
    EXPECT_EQ(std::strtod(cli::fmt17(pi).c_str(), nullptr), pi);
}
