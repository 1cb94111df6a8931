#include "fixtures.hpp"
#include "oracles.hpp"

#include "fsmr/cli.hpp"
#include "fsmr/render.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace fsmr;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result fsmr_run(std::vector<std::string> args) {
    args.insert(args.begin(), "fsmr");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(FSMR_SCRATCH_DIR) / "cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write(const fs::path& path, std::string_view text) {
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

std::set<std::string> listing(const fs::path& dir) {
    std::set<std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) out.insert(e.path().filename().string());
    return out;
}

std::size_t frame_files(const fs::path& dir) {
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (name.starts_with("frame_") && name.ends_with(".svg")) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("simulate prints the trace and maps the verdict to the exit code") {
    const auto dir = scratch("simulate");
    const auto even = write(dir / "even.fsm", fixtures::even_a_document).string();

    auto r = fsmr_run({"simulate", even, "aa"});
    CHECK(r.code == 0);
    CHECK(r.out == "e --a--> o\no --a--> e\nACCEPTED\n");

    r = fsmr_run({"simulate", even, "a"});
    CHECK(r.code == 1);
    CHECK(r.out == "e --a--> o\nREJECTED\n");

    r = fsmr_run({"simulate", even, ""});
    CHECK(r.code == 0);
    CHECK(r.out == "ACCEPTED\n");

    r = fsmr_run({"simulate", even, "abc"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("'c'") != std::string::npos);
    CHECK(r.err.find("position 2") != std::string::npos);

    const auto fig = write(dir / "fig.fsm", fixtures::figure_document).string();
    r = fsmr_run({"simulate", fig, "abc"});
    CHECK(r.code == 1);
    CHECK(r.out.find("q2 --c--> q0\n") != std::string::npos);
}

TEST_CASE("simulate errors exit 2") {
    const auto dir = scratch("simulate-errors");
    const auto nfa = write(dir / "n.fsm", fixtures::contains_ab_document).string();
    auto r = fsmr_run({"simulate", nfa, "ab"});
    CHECK(r.code == 2);
    CHECK(r.err.find("nfa-to-dfa") != std::string::npos);

    r = fsmr_run({"simulate", (dir / "missing.fsm").string(), "a"});
    CHECK(r.code == 2);
    CHECK(r.err.starts_with("error: "));

    const auto broken = write(dir / "broken.fsm", "kind: dfa\nstates: a\nalphabet: x\nstart: a\ndelta:\n  a x\n").string();
    r = fsmr_run({"simulate", broken, "x"});
    CHECK(r.code == 2);
    CHECK(r.err.find("broken.fsm:6:") != std::string::npos);

    const auto partial = write(dir / "partial.fsm", "kind: dfa\nstates: a b\nalphabet: x y\nstart: a\naccept: b\ndelta:\n  a x -> b\n").string();
    r = fsmr_run({"simulate", partial, "xy"});
    CHECK(r.code == 2);
    CHECK(r.err.find("missing transition") != std::string::npos);
    r = fsmr_run({"simulate", partial, "xy", "--complete-with-trap", "dead"});
    CHECK(r.code == 1);
    CHECK(r.out == "a --x--> b\nb --y--> dead\nREJECTED\n");
    r = fsmr_run({"simulate", partial, "x", "--complete-with-trap", "b"});
    CHECK(r.code == 2);

    CHECK(fsmr_run({}).code == 2);
    CHECK(fsmr_run({"simulate"}).code == 2);
    CHECK(fsmr_run({"frobnicate"}).code == 2);
    CHECK(fsmr_run({"simulate", partial, "x", "--bogus"}).code == 2);
}

TEST_CASE("render frames") {
    const auto dir = scratch("render");
    const auto even = write(dir / "even.fsm", fixtures::even_a_document).string();
    const auto out = dir / "out";

    auto r = fsmr_run({"render", even, "ab", "-o", out.string()});
    REQUIRE(r.code == 0);
    CHECK(frame_files(out) == 165);
    CHECK(fs::exists(out / "frame_000165.svg"));
    CHECK(slurp(out / manifest_file_name).find("frames: 165\n") != std::string::npos);
    // Nothing else appears next to the machine file.
    CHECK(listing(dir) == std::set<std::string>{"even.fsm", "out"});

    r = fsmr_run({"render", even, "ab", "-o", out.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("--force") != std::string::npos);

    // A shorter run with --force leaves no stale frames behind.
    r = fsmr_run({"render", even, "", "-o", out.string(), "--force", "--jobs", "3"});
    REQUIRE(r.code == 0);
    CHECK(frame_files(out) == 105);

    r = fsmr_run({"render", even, "ab", "-o", (dir / "fast").string(), "--fps", "10", "--step-duration", "0.5",
                  "--intro-duration", "1", "--verdict-duration", "1"});
    REQUIRE(r.code == 0);
    CHECK(frame_files(dir / "fast") == 30);

    r = fsmr_run({"render", even, "ax", "-o", (dir / "bad").string()});
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(dir / "bad"));
    CHECK(fsmr_run({"render", even, "ab", "-o", (dir / "bad").string(), "--fps", "0"}).code == 2);
    CHECK(fsmr_run({"render", even, "ab", "-o", (dir / "bad").string(), "--format", "gif"}).code == 2);
}

TEST_CASE("render formats") {
    const auto dir = scratch("formats");
    const auto even = write(dir / "even.fsm", fixtures::even_a_document).string();

    auto r = fsmr_run({"render", even, "abba", "-o", (dir / "t").string(), "--format", "timeline"});
    REQUIRE(r.code == 0);
    CHECK(listing(dir / "t") == std::set<std::string>{"timeline.txt"});
    CHECK(slurp(dir / "t" / "timeline.txt").find("groups: 6\n") != std::string::npos);

    r = fsmr_run({"render", even, "-o", (dir / "s").string(), "--format", "static"});
    REQUIRE(r.code == 0);
    CHECK(listing(dir / "s") == std::set<std::string>{"diagram.svg"});

    r = fsmr_run({"render", even, "ab", "-o", (dir / "a").string(), "--format", "animated-svg", "--ghost-consumed"});
    REQUIRE(r.code == 0);
    CHECK(listing(dir / "a") == std::set<std::string>{"animation.svg", "manifest.txt"});
    CHECK(slurp(dir / "a" / "animation.svg").find("to=\"0.35\"") != std::string::npos);

    const auto style = write(dir / "theme.style", "highlight: 123abc\nstep-duration: 2\n").string();
    r = fsmr_run({"render", even, "ab", "-o", (dir / "styled").string(), "--format", "timeline", "--style", style});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "styled" / "timeline.txt").find("total: 7.5\n") != std::string::npos);
    // Command-line durations override the style file.
    r = fsmr_run({"render", even, "ab", "-o", (dir / "styled2").string(), "--format", "timeline", "--style", style,
                  "--step-duration", "1"});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "styled2" / "timeline.txt").find("total: 5.5\n") != std::string::npos);

    const auto bad_style = write(dir / "bad.style", "highlight: nope\n").string();
    CHECK(fsmr_run({"render", even, "ab", "-o", (dir / "x").string(), "--style", bad_style}).code == 2);
}

TEST_CASE("render is deterministic across runs and job counts") {
    const auto dir = scratch("determinism");
    const auto fig = write(dir / "fig.fsm", fixtures::figure_document).string();
    REQUIRE(fsmr_run({"render", fig, "abcab", "-o", (dir / "one").string()}).code == 0);
    REQUIRE(fsmr_run({"render", fig, "abcab", "-o", (dir / "two").string(), "--jobs", "4"}).code == 0);
    CHECK(listing(dir / "one") == listing(dir / "two"));
    for (const auto& name : listing(dir / "one")) CHECK(slurp(dir / "one" / name) == slurp(dir / "two" / name));
}

TEST_CASE("convert") {
    const auto dir = scratch("convert");
    auto r = fsmr_run({"convert", "--regex", "a|b", "regex-to-nfa", "-o", (dir / "ab.fsm").string()});
    REQUIRE(r.code == 0);
    const auto nfa_def = parse_definition(slurp(dir / "ab.fsm"));
    CHECK(nfa_def.kind == MachineKind::nfa);
    CHECK(nfa_def.title == "regex a|b");
    const auto nfa = validate_nfa(nfa_def);
    CHECK(nfa.state_count() == 6);
    CHECK(nfa_accepts(nfa, U"a"));
    CHECK(nfa_accepts(nfa, U"b"));
    CHECK_FALSE(nfa_accepts(nfa, U"ab"));

    r = fsmr_run({"convert", (dir / "ab.fsm").string(), "nfa-to-dfa", "-o", (dir / "ab-dfa.fsm").string()});
    REQUIRE(r.code == 0);
    const auto dfa = validate_dfa(parse_definition(slurp(dir / "ab-dfa.fsm")));
    r = fsmr_run({"convert", (dir / "ab-dfa.fsm").string(), "minimize", "-o", (dir / "ab-min.fsm").string()});
    REQUIRE(r.code == 0);
    const auto min = validate_dfa(parse_definition(slurp(dir / "ab-min.fsm")));
    CHECK(min.state_count() == 3);
    CHECK(equivalent(dfa, min).equivalent);

    r = fsmr_run({"convert", (dir / "ab-dfa.fsm").string(), "nfa-to-dfa", "-o", (dir / "x.fsm").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("already deterministic") != std::string::npos);
    r = fsmr_run({"convert", (dir / "ab.fsm").string(), "minimize", "-o", (dir / "x.fsm").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("nfa-to-dfa first") != std::string::npos);
    CHECK(fsmr_run({"convert", "regex-to-nfa", "-o", (dir / "x.fsm").string()}).code == 2);
    CHECK(fsmr_run({"convert", "--regex", "(a|", "regex-to-nfa", "-o", (dir / "x.fsm").string()}).code == 2);
    CHECK(fsmr_run({"convert", (dir / "ab.fsm").string(), "sideways", "-o", (dir / "x.fsm").string()}).code == 2);
    CHECK_FALSE(fs::exists(dir / "x.fsm"));

    r = fsmr_run({"convert", "--regex", "a*", "--alphabet", "ba", "regex-to-nfa", "-o", (dir / "star.fsm").string()});
    REQUIRE(r.code == 0);
    CHECK(parse_definition(slurp(dir / "star.fsm")).alphabet == std::vector<std::string>{"a", "b"});
}

TEST_CASE("chain") {
    const auto dir = scratch("chain");
    const auto out = dir / "out";
    auto r = fsmr_run({"chain", "--regex", "(a|b)*abb", "nfa", "dfa", "min", "-o", out.string(), "--input", "abb"});
    REQUIRE(r.code == 0);
    CHECK(listing(out) == std::set<std::string>{"01-nfa.fsm", "02-dfa.fsm", "03-min.fsm", "simulation"});
    CHECK(frame_files(out / "simulation") == frame_count(Micros{6'500'000}, 30));
    CHECK(r.out.find("ACCEPTED") != std::string::npos);
    const auto final_dfa = validate_dfa(parse_definition(slurp(out / "03-min.fsm")));
    CHECK(final_dfa.state_count() == 4);
    CHECK(accepts(final_dfa, U"abb"));
    for (const auto& w : oracle::all_words(2, 6)) CHECK(accepts(final_dfa, w) == oracle::regex_member("(a|b)*abb", w));
    CHECK(equivalent(validate_dfa(parse_definition(slurp(out / "02-dfa.fsm"))), final_dfa).equivalent);

    // Starting from a dfa file.
    const auto even = write(dir / "even.fsm", fixtures::even_a_document).string();
    r = fsmr_run({"chain", even, "min", "-o", (dir / "from-dfa").string()});
    REQUIRE(r.code == 0);
    CHECK(listing(dir / "from-dfa") == std::set<std::string>{"01-min.fsm"});
}

TEST_CASE("chain rejects bad plans before doing any work") {
    const auto dir = scratch("chain-bad");
    const auto even = write(dir / "even.fsm", fixtures::even_a_document).string();
    const auto nfa = write(dir / "n.fsm", fixtures::contains_ab_document).string();
    for (const std::vector<std::string>& args : {
             std::vector<std::string>{"chain", even, "nfa", "-o"},
             std::vector<std::string>{"chain", even, "dfa", "-o"},
             std::vector<std::string>{"chain", nfa, "min", "-o"},
             std::vector<std::string>{"chain", "--regex", "ab", "dfa", "-o"},
             std::vector<std::string>{"chain", "--regex", "ab", "nfa", "nfa", "-o"},
             std::vector<std::string>{"chain", "--regex", "ab", "nfa", "min", "-o"},
             std::vector<std::string>{"chain", "--regex", "ab", "nfa", "-o", "--input", "ab"},
             std::vector<std::string>{"chain", "--regex", "ab", "nfa", "warp", "-o"},
         }) {
        auto full = args;
        const auto target = dir / "never";
        auto pos = std::find(full.begin(), full.end(), "-o");
        full.insert(pos + 1, target.string());
        const auto r = fsmr_run(full);
        CAPTURE(r.err);
        CHECK(r.code == 2);
        CHECK(r.err.starts_with("error: "));
        CHECK_FALSE(fs::exists(target));
    }
}

TEST_CASE("chain plans") {
    using S = cli::Stage;
    const auto plan = cli::make_chain_plan(cli::SourceKind::regex, {S::regex_to_nfa, S::nfa_to_dfa, S::minimize});
    CHECK(plan.outputs == std::vector<std::string>{"01-nfa.fsm", "02-dfa.fsm", "03-min.fsm"});
    CHECK(cli::make_chain_plan(cli::SourceKind::nfa, {S::nfa_to_dfa, S::minimize, S::minimize}).outputs.size() == 3);
    CHECK_THROWS_AS(cli::make_chain_plan(cli::SourceKind::regex, {}), std::invalid_argument);
    CHECK_THROWS_AS(cli::make_chain_plan(cli::SourceKind::dfa, {S::regex_to_nfa}), std::invalid_argument);
    CHECK_THROWS_AS(cli::make_chain_plan(cli::SourceKind::dfa, {S::nfa_to_dfa}), std::invalid_argument);
    CHECK_THROWS_AS(cli::make_chain_plan(cli::SourceKind::nfa, {S::minimize}), std::invalid_argument);
    CHECK(cli::parse_stage("min") == S::minimize);
    CHECK(cli::parse_stage("regex-to-nfa") == S::regex_to_nfa);
    CHECK_FALSE(cli::parse_stage("nope"));
    CHECK(cli::stage_name(S::nfa_to_dfa) == "nfa-to-dfa");
}

TEST_CASE("help snapshots") {
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        {"help_main.txt", {"--help"}},
        {"help_simulate.txt", {"simulate", "--help"}},
        {"help_render.txt", {"render", "--help"}},
        {"help_convert.txt", {"convert", "--help"}},
        {"help_chain.txt", {"chain", "--help"}},
    };
    for (const auto& [file, args] : cases) {
        CAPTURE(file);
        const auto r = fsmr_run(args);
        CHECK(r.code == 0);
        CHECK(r.out == slurp(fs::path(FSMR_GOLDEN_DIR) / file));
    }
    const std::vector<std::pair<std::string, std::vector<std::string>>> flags = {
        {"simulate", {"--complete-with-trap"}},
        {"render", {"--format", "--fps", "--intro-duration", "--step-duration", "--verdict-duration", "--style",
                    "--complete-with-trap", "--ghost-consumed", "--force", "--jobs", "--out"}},
        {"convert", {"--regex", "--alphabet", "--out"}},
        {"chain", {"--regex", "--alphabet", "--out", "--input", "--fps", "--style", "--force", "--jobs",
                   "--step-duration", "--ghost-consumed"}},
    };
    for (const auto& [command, names] : flags) {
        const auto help = fsmr_run({command, "--help"}).out;
        for (const auto& flag : names) CHECK_MESSAGE(help.find(flag) != std::string::npos, command << " " << flag);
    }
}
