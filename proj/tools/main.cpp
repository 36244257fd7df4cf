#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace picklab::cli;

namespace {

void add_common(CLI::App* sub, Flags& f, std::string& tol, int& max_level, int& max_iter, std::uint64_t& seed)
{
    sub->add_option("--tol", tol, "tolerance: 'auto' or a number");
    sub->add_option("--max-level", max_level, "cap on truncated-series levels")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-iter", max_iter, "Agler iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "random seed");
    sub->add_flag("--literal-unweighted", f.literal_unweighted, "unweighted multi-index sum for ball.da_ltoa");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"picklab: feasibility checks for Nevanlinna-Pick interpolation problems"};
    app.require_subcommand(1);

    Flags flags;
    std::string input, tol, setting, kind = "disk", emit;
    int max_level = -1, max_iter = -1, degree = 3, trials = 20, rows = 1, cols = 1, d = 2;
    std::uint64_t seed = 1;
    std::string out;

    auto* check = app.add_subcommand("check", "decide a dataset with its Pick criterion");
    check->add_option("input", input, "request JSON")->required();
    add_common(check, flags, tol, max_level, max_iter, seed);

    auto* agler = app.add_subcommand("agler", "search for an Agler decomposition");
    agler->add_option("input", input, "request JSON")->required();
    agler->add_option("--emit-certificate", emit, "write the certificate kernels to this path");
    add_common(agler, flags, tol, max_level, max_iter, seed);

    auto* choi = app.add_subcommand("choi", "print the Choi matrix of a cp.* map");
    choi->add_option("input", input, "request JSON")->required();
    add_common(choi, flags, tol, max_level, max_iter, seed);

    auto* cpcheck = app.add_subcommand("cpcheck", "test complete positivity of a cp.* map");
    cpcheck->add_option("input", input, "request JSON")->required();
    add_common(cpcheck, flags, tol, max_level, max_iter, seed);

    auto* sample = app.add_subcommand("sample", "draw a certified Schur-class sample");
    sample->add_option("--kind", kind, "disk, blaschke, ball or quiver");
    sample->add_option("--degree", degree, "polynomial degree or number of Blaschke zeros");
    sample->add_option("--seed", seed, "random seed");
    sample->add_option("--rows", rows, "output dimension");
    sample->add_option("--cols", cols, "input dimension");
    sample->add_option("--d", d, "number of ball variables");
    sample->add_option("--out", out, "write the sample here instead of stdout");

    auto* nec = app.add_subcommand("necessity", "run a sampled necessity suite");
    nec->add_option("setting", setting, "setting name, e.g. disk.ltoa")->required();
    nec->add_option("--trials", trials, "number of trials");
    nec->add_option("--seed", seed, "random seed");
    nec->add_option("--max-level", max_level, "cap on truncated-series levels")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << render(error_outcome(kExitUsage, "usage", e.what(), "").doc);
        return kExitUsage;
    }

    if (!tol.empty()) flags.tol = tol;
    if (max_level >= 0) flags.max_level = max_level;
    if (max_iter > 0) flags.max_iter = max_iter;
    for (auto* s : {check, agler, choi, cpcheck, nec})
        if (s->parsed() && s->count("--seed")) flags.seed = seed;
    if (!emit.empty()) flags.emit_certificate = emit;

    Outcome o;
    if (check->parsed()) o = cmd_check(input, flags);
    else if (agler->parsed()) o = cmd_agler(input, flags);
    else if (choi->parsed()) o = cmd_choi(input, flags);
    else if (cpcheck->parsed()) o = cmd_cpcheck(input, flags);
    else if (sample->parsed()) o = cmd_sample(kind, degree, seed, out.empty() ? std::nullopt : std::optional<std::string>(out), rows, cols, d);
    else o = cmd_necessity(setting, trials, seed, flags);
    std::cout << render(o.doc);
    if (o.exit_code == kExitData || o.exit_code == kExitUsage) std::cerr << "picklab: " << o.doc.value("error", nlohmann::json::object()).value("message", "") << "\n";
    return o.exit_code;
}
