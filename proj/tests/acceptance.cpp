// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails.

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include "fsmr/cli.hpp"
#include "fsmr/render.hpp"
#include "fsmr/timeline.hpp"

#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

using namespace fsmr;
namespace fs = std::filesystem;

namespace {

// Collects the first few failure details for a criterion.
struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok) ++failed;
    }
    std::size_t failed = 0;
};

int cli_run(std::vector<std::string> args, std::string* out = nullptr) {
    args.insert(args.begin(), "fsmr");
    std::ostringstream o;
    std::ostringstream e;
    const int code = cli::run(args, o, e);
    if (out) *out = o.str() + e.str();
    return code;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(FSMR_SCRATCH_DIR) / "acceptance" / name;
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

std::u32string random_word(std::mt19937& rng, int k, int max_len) {
    std::u32string w;
    const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    for (int i = 0; i < len; ++i) w.push_back(static_cast<char32_t>(U'a' + std::uniform_int_distribution<int>(0, k - 1)(rng)));
    return w;
}

std::vector<oracle::RawNfa> nfa_corpus() {
    std::mt19937 rng(3003);
    std::vector<oracle::RawNfa> corpus;
    for (int i = 0; i < 200; ++i) corpus.push_back(oracle::random_nfa(rng, 5, 2));
    return corpus;
}

void criterion_1(Check& c) {
    const auto fig = fixtures::figure();
    const auto trace = simulate(fig, U"abc");
    c.expect(trace.visited.at(2) == "q2", "figure machine is not in q2 before c");
    const auto t = build_timeline(fig, trace, layout(fig), {});
    const auto& step = std::get<StepGroup>(t.groups.at(3));
    const auto* consume = std::get_if<ConsumeChar>(&step.events.at(0));
    const auto* edge = std::get_if<HighlightEdge>(&step.events.at(1));
    const auto* cell = std::get_if<HighlightCell>(&step.events.at(2));
    c.expect(consume && consume->symbol == U'c' && consume->position == 2, "ConsumeChar c");
    c.expect(edge && edge->from == "q2" && edge->to == "q0" && edge->symbol == U'c', "edge q2->q0");
    c.expect(cell && cell->row == "q2" && cell->column == U'c', "cell (q2, c)");
    for (const auto& e : step.events) {
        c.expect(event_start(e) == step.start && event_duration(e) == step.duration, "events are not simultaneous");
    }
}

void criterion_2(Check& c) {
    std::mt19937 rng(2002);
    for (int i = 0; i < 500; ++i) {
        const auto raw = oracle::random_dfa(rng, 8, 3);
        const auto dfa = oracle::to_dfa(raw);
        const auto w = random_word(rng, raw.k, 12);
        const auto trace = simulate(dfa, w);
        c.expect(trace.visited.size() == w.size() + 1, fmt::format("dfa {}: visited length", i));
        if (trace.visited.size() != w.size() + 1) continue;
        c.expect(trace.visited[0] == oracle::state_name(raw.start), fmt::format("dfa {}: start", i));
        for (std::size_t j = 0; j < w.size(); ++j) {
            const auto from = static_cast<int>(*dfa.find_state(trace.visited[j]));
            const int expected = raw.next(from, static_cast<int>(w[j] - U'a'));
            c.expect(trace.visited[j + 1] == oracle::state_name(expected), fmt::format("dfa {}: linkage at {}", i, j));
        }
        c.expect((trace.verdict == Verdict::accepted) == oracle::fold(raw, w), fmt::format("dfa {}: verdict", i));
    }
}

void criterion_3(Check& c) {
    const auto corpus = nfa_corpus();
    const auto words = oracle::all_words(2, 6);
    c.expect(words.size() == 127, "word count");
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto nfa = oracle::to_nfa(corpus[i]);
        const auto dfa = subset_construction(nfa);
        for (const auto& w : words) {
            const bool expected = nfa_accepts(nfa, w);
            c.expect(expected == oracle::nfa_member(corpus[i], w), fmt::format("nfa {}: simulate_nfa vs fixpoint", i));
            c.expect(oracle::fold(dfa, w) == expected, fmt::format("nfa {}: subset construction", i));
        }
    }
}

void criterion_4(Check& c) {
    const auto corpus = nfa_corpus();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto d = subset_construction(oracle::to_nfa(corpus[i]));
        const auto m = minimize(d);
        c.expect(equivalent(d, m).equivalent, fmt::format("nfa {}: minimize changed the language", i));
        c.expect(minimize(m).state_count() == m.state_count(), fmt::format("nfa {}: not idempotent", i));
        c.expect(static_cast<int>(m.state_count()) == oracle::minimal_state_count(oracle::from_dfa(d)),
                 fmt::format("nfa {}: state count differs from table filling", i));
    }
    // Even number of a's with the even state duplicated.
    const auto dup = validate_dfa(parse_definition(R"(kind: dfa
states: e e2 o
alphabet: a b
start: e
accept: e e2
delta:
  e a -> o
  e b -> e2
  e2 a -> o
  e2 b -> e
  o a -> e2
  o b -> o
)"));
    const auto m = minimize(dup);
    c.expect(m.state_count() == dup.state_count() - 1, fmt::format("duplicate: {} states", m.state_count()));
    c.expect(equivalent(dup, m).equivalent, "duplicate: language changed");
}

void criterion_5(Check& c) {
    const auto dir = scratch("chain");
    std::string log;
    const int code = cli_run({"chain", "--regex", "(a|b)*abb", "nfa", "dfa", "min", "-o", dir.string()}, &log);
    c.expect(code == 0, "chain exit code " + std::to_string(code) + ": " + log);
    if (code != 0) return;
    const auto final_dfa = validate_dfa(parse_definition(slurp(dir / "03-min.fsm")));
    for (const auto& w : oracle::all_words(2, 6)) {
        c.expect(oracle::fold(final_dfa, w) == oracle::regex_member("(a|b)*abb", w), "disagrees with std::regex");
    }
    c.expect(final_dfa.state_count() == 4, fmt::format("{} states", final_dfa.state_count()));
    c.expect(oracle::minimal_state_count(oracle::from_dfa(final_dfa)) == 4, "table filling disagrees");
}

void criterion_6(Check& c) {
    std::mt19937 rng(6006);
    const StyleConfig style;
    for (int i = 0; i < 300; ++i) {
        const auto raw = oracle::random_dfa(rng, 8, 3);
        const auto dfa = oracle::to_dfa(raw);
        const auto w = random_word(rng, raw.k, 12);
        const auto t = build_timeline(dfa, simulate(dfa, w), layout(dfa), style);
        c.expect(t.groups.size() == w.size() + 2, fmt::format("run {}: group count", i));
        for (const auto& g : t.groups) {
            const auto* step = std::get_if<StepGroup>(&g);
            if (!step) continue;
            for (const auto& e : step->events) {
                c.expect(event_start(e) == step->start && event_duration(e) == step->duration,
                         fmt::format("run {}: step {} events differ", i, step->index));
            }
        }
    }
}

void criterion_7(Check& c) {
    const auto dir = scratch("determinism");
    const auto machine = dir / "figure.fsm";
    std::ofstream(machine) << fixtures::figure_document;
    const auto one = dir / "one";
    const auto two = dir / "two";
    c.expect(cli_run({"render", machine.string(), "abcab", "-o", one.string()}) == 0, "first render failed");
    c.expect(cli_run({"render", machine.string(), "abcab", "-o", two.string(), "--jobs", "4"}) == 0, "second render failed");
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(one)) {
        const auto name = entry.path().filename();
        ++files;
        const auto a = slurp(one / name);
        const auto b = slurp(two / name);
        c.expect(std::hash<std::string>{}(a) == std::hash<std::string>{}(b) && a == b, name.string() + " differs");
    }
    c.expect(files == static_cast<std::size_t>(std::distance(fs::directory_iterator(two), fs::directory_iterator{})),
             "file sets differ");
    c.expect(fs::exists(one / manifest_file_name), "manifest missing");
}

void criterion_8(Check& c) {
    c.expect(frame_count(Micros{5'500'000}, 30) == 165, "frame_count");
    const auto dir = scratch("frames");
    const auto machine = dir / "even.fsm";
    std::ofstream(machine) << fixtures::even_a_document;
    c.expect(cli_run({"render", machine.string(), "ab", "-o", (dir / "out").string()}) == 0, "render failed");
    std::size_t frames = 0;
    for (const auto& entry : fs::directory_iterator(dir / "out")) {
        if (entry.path().extension() == ".svg") ++frames;
    }
    c.expect(frames == 165, fmt::format("{} frame files", frames));
}

void criterion_9(Check& c) {
    std::mt19937 rng(9009);
    for (int i = 0; i < 500; ++i) {
        const auto def = generators::random_definition(rng);
        const auto text = serialize_definition(def);
        try {
            c.expect(parse_definition(text) == def, fmt::format("definition {} changed", i));
        } catch (const std::exception& e) {
            c.expect(false, fmt::format("definition {}: {}", i, e.what()));
        }
    }
}

void criterion_10(Check& c) {
    std::mt19937 rng(1010);
    std::size_t loops = 0;
    auto check = [&](const LayoutGraph& g, int i) {
        for (const auto& e : g.edges) {
            if (e.from != e.to) continue;
            ++loops;
            const auto anchor = std::get<SelfLoopRoute>(e.route).anchor;
            c.expect(anchor == oracle::best_anchor(oracle::departure_headings(g, e.from)),
                     fmt::format("machine {}: loop at {}", i, g.nodes[e.from].state));
        }
    };
    for (int i = 0; i < 300; ++i) check(layout(oracle::to_dfa(oracle::random_dfa(rng, 8, 3))), i);
    for (int i = 0; i < 200; ++i) check(layout(oracle::to_nfa(oracle::random_nfa(rng, 6, 2))), 300 + i);
    c.expect(loops > 100, fmt::format("only {} self-loops generated", loops));
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"step group for c in q2", criterion_1},
        {"trace soundness on 500 random dfas", criterion_2},
        {"subset construction on 200 random nfas", criterion_3},
        {"minimization", criterion_4},
        {"chain (a|b)*abb nfa dfa min", criterion_5},
        {"timeline shape", criterion_6},
        {"render determinism", criterion_7},
        {"165 frames for a length-2 input", criterion_8},
        {"definition round-trip on 500 random machines", criterion_9},
        {"self-loop anchor rule", criterion_10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto begin = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - begin);
        fmt::print("{} criterion {}: {} ({} ms)\n", c.failed == 0 ? "PASS" : "FAIL", i + 1, criteria[i].first, ms.count());
        for (const auto& f : c.failures) fmt::print("    {}\n", f);
        if (c.failed) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
