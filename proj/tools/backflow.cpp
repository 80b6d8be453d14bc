#include "backflow/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

std::pair<double, double> parse_range(const std::string& text)
{
    std::stringstream ss(text);
    double lo = 0.0, hi = 0.0;
    char comma = 0;
    if (!(ss >> lo >> comma >> hi) || comma != ',' || !(ss >> std::ws).eof() || !(lo < hi))
        throw backflow::SpecViolation("--range must be 'lo,hi' with lo < hi");
    return {lo, hi};
}

backflow::Root parse_pole(const std::string& text)
{
    std::stringstream ss(text);
    double re = 0.0, im = 0.0;
    int mult = 1;
    char c1 = 0, c2 = 0;
    if (!(ss >> re >> c1 >> im) || c1 != ',')
        throw backflow::SpecViolation("--pole must be 're,im[,mult]'");
    if (ss >> c2) {
        if (c2 != ',' || !(ss >> mult))
            throw backflow::SpecViolation("--pole must be 're,im[,mult]'");
    }
    return {{re, im}, mult};
}

} // namespace

int main(int argc, char** argv)
{
    namespace bc = backflow::cli;
    CLI::App app{"Backflow wave functions from rational functions"};
    app.require_subcommand(1);

    std::string input, output, range, profile = "exp:-1";
    std::size_t samples = 2001;
    double tol = 1e-6;
    int figure = 0, m = 8;
    double x0 = 3.141592653589793;
    std::vector<std::string> poles;

    auto* analyze = app.add_subcommand("analyze", "sample density, wave number, current and spectrum");
    analyze->add_option("--input", input, "descriptor JSON")->required();
    analyze->add_option("--output", output, "CSV path (sidecars share its stem)")->required();
    analyze->add_option("--range", range, "x range 'lo,hi'");
    analyze->add_option("--samples", samples, "grid size")->capture_default_str();

    auto* design = app.add_subcommand("design", "constrained Pade design");
    design->add_option("--profile", profile, "exp:KAPPA or taylor:re,im;re,im;...")->capture_default_str();
    design->add_option("--pole", poles, "pole 're,im,mult' (repeatable)")->required();
    design->add_option("--m", m, "numerator degree")->capture_default_str();
    design->add_option("--x0", x0, "half-width of the design interval")->capture_default_str();
    design->add_option("--output", output, "CSV path")->required();
    design->add_option("--range", range, "x range 'lo,hi'");
    design->add_option("--samples", samples, "grid size")->capture_default_str();

    auto* fig = app.add_subcommand("figure", "write the datasets of one figure");
    fig->add_option("--figure", figure, "figure id 1..4")->required();
    fig->add_option("--output", output, "output directory")->required();

    auto* verify = app.add_subcommand("verify", "check analytic results against the numerical oracle");
    verify->add_option("--input", input, "descriptor JSON")->required();
    verify->add_option("--tol", tol, "tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : bc::kExitInvalid;
    }

    try {
        std::optional<std::pair<double, double>> r;
        if (!range.empty())
            r = parse_range(range);
        if (*analyze)
            return bc::cmd_analyze({input, output, r, samples}, std::cout, std::cerr);
        if (*design) {
            bc::DesignOptions opt;
            opt.profile = profile;
            for (const auto& p : poles)
                opt.poles.push_back(parse_pole(p));
            opt.m = m;
            opt.x0 = x0;
            opt.output = output;
            opt.range = r;
            opt.samples = samples;
            return bc::cmd_design(opt, std::cout, std::cerr);
        }
        if (*fig)
            return bc::cmd_figure(figure, output, std::cout, std::cerr);
        return bc::cmd_verify(input, tol, std::cout, std::cerr);
    } catch (const backflow::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bc::kExitInvalid;
    }
}
