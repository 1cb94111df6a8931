#include "fsmr/cli.hpp"

#include "fsmr/automata.hpp"
#include "fsmr/definition.hpp"
#include "fsmr/errors.hpp"
#include "fsmr/layout.hpp"
#include "fsmr/regex.hpp"
#include "fsmr/render.hpp"
#include "fsmr/style.hpp"
#include "fsmr/timeline.hpp"
#include "fsmr/utf8.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace fsmr::cli {

namespace fs = std::filesystem;

std::optional<Stage> parse_stage(std::string_view name) {
    if (name == "regex-to-nfa" || name == "nfa") return Stage::regex_to_nfa;
    if (name == "nfa-to-dfa" || name == "dfa") return Stage::nfa_to_dfa;
    if (name == "minimize" || name == "min") return Stage::minimize;
    return std::nullopt;
}

std::string_view stage_name(Stage stage) {
    switch (stage) {
        case Stage::regex_to_nfa: return "regex-to-nfa";
        case Stage::nfa_to_dfa: return "nfa-to-dfa";
        case Stage::minimize: return "minimize";
    }
    return "";
}

namespace {

std::string_view short_name(Stage stage) {
    switch (stage) {
        case Stage::regex_to_nfa: return "nfa";
        case Stage::nfa_to_dfa: return "dfa";
        case Stage::minimize: return "min";
    }
    return "";
}

std::string_view source_name(SourceKind kind) {
    switch (kind) {
        case SourceKind::regex: return "a regex";
        case SourceKind::nfa: return "an nfa";
        case SourceKind::dfa: return "a dfa";
    }
    return "";
}

// Error that should reach the user as a one-line diagnostic.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError(fmt::format("cannot read '{}'", path.string()));
    std::ostringstream contents;
    contents << file.rdbuf();
    return contents.str();
}

MachineDefinition load_definition(const fs::path& path) {
    try {
        return parse_definition(read_file(path));
    } catch (const ParseError& e) {
        throw UsageError(fmt::format("{}:{}", path.string(), e.what()));
    }
}

Dfa load_dfa(const fs::path& path, const std::optional<std::string>& trap) {
    const auto definition = load_definition(path);
    if (definition.kind != MachineKind::dfa) {
        throw UsageError(fmt::format("'{}' is an nfa; convert it first with `fsmr convert {} nfa-to-dfa -o <file>`",
                                     path.string(), path.string()));
    }
    return trap ? complete(definition, *trap) : validate_dfa(definition);
}

std::vector<Symbol> parse_alphabet(const std::string& text) {
    const auto decoded = utf8::decode(text);
    if (!decoded) throw UsageError("--alphabet is not valid UTF-8");
    return {decoded->begin(), decoded->end()};
}

// An empty or missing directory is fine; anything else needs --force, which
// clears only the artifacts this tool writes.
void prepare_output_directory(const fs::path& dir, bool force) {
    std::error_code ec;
    if (fs::exists(dir, ec)) {
        if (!fs::is_directory(dir, ec)) throw UsageError(fmt::format("'{}' exists and is not a directory", dir.string()));
        if (!fs::is_empty(dir, ec)) {
            if (!force) {
                throw UsageError(fmt::format("output directory '{}' is not empty; pass --force to overwrite", dir.string()));
            }
            for (const auto& entry : fs::directory_iterator(dir)) {
                const auto name = entry.path().filename().string();
                const bool ours = (name.starts_with("frame_") && name.ends_with(".svg")) || name == manifest_file_name ||
                                  name == "animation.svg" || name == "timeline.txt" || name == "diagram.svg";
                if (ours && entry.is_regular_file()) fs::remove(entry.path(), ec);
            }
        }
    }
    fs::create_directories(dir, ec);
    if (ec) throw OutputIoError(dir.string(), ec.message());
}

struct StyleOptions {
    std::string style_file;
    std::optional<int> fps;
    std::optional<double> intro;
    std::optional<double> step;
    std::optional<double> verdict;
    bool ghost = false;

    StyleConfig resolve() const {
        StyleConfig style;
        if (!style_file.empty()) {
            try {
                style = parse_style(read_file(style_file));
            } catch (const ParseError& e) {
                throw UsageError(fmt::format("{}:{}", style_file, e.what()));
            }
        }
        if (fps) style.fps = *fps;
        if (intro) style.durations.intro = seconds_to_micros(*intro);
        if (step) style.durations.step = seconds_to_micros(*step);
        if (verdict) style.durations.verdict = seconds_to_micros(*verdict);
        if (ghost) style.ghost_consumed = true;
        style.validate();
        return style;
    }
};

void add_style_options(CLI::App& cmd, StyleOptions& o) {
    cmd.add_option("--fps", o.fps, "Frames per second for frame output (default 30)")->check(CLI::Range(1, 1000));
    cmd.add_option("--intro-duration", o.intro, "Seconds for the intro group (default 2.0)")->check(CLI::PositiveNumber);
    cmd.add_option("--step-duration", o.step, "Seconds per consumed symbol (default 1.0)")->check(CLI::PositiveNumber);
    cmd.add_option("--verdict-duration", o.verdict, "Seconds for the verdict group (default 1.5)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--style", o.style_file, "Style file (same line syntax as .fsm)")->check(CLI::ExistingFile);
    cmd.add_flag("--ghost-consumed", o.ghost, "Grey consumed input out instead of removing it");
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
    std::string machine;
    std::string input;
    std::optional<std::string> trap;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
    const Dfa dfa = load_dfa(o.machine, o.trap);
    const auto trace = simulate(dfa, std::string_view(o.input));
    for (const auto& s : trace.steps) out << s.from << " --" << utf8::encode(s.symbol) << "--> " << s.to << '\n';
    const bool ok = trace.verdict == Verdict::accepted;
    out << (ok ? "ACCEPTED" : "REJECTED") << '\n';
    return ok ? accepted : rejected;
}

struct RenderOptions {
    std::string machine;
    std::string input;
    std::string out_dir;
    std::string format = "frames";
    std::optional<std::string> trap;
    bool force = false;
    unsigned jobs = 1;
    StyleOptions style;
};

// Renders `dfa` on `input` into `dir` in the requested format.
void render_run(const Dfa& dfa, std::u32string_view input, const fs::path& dir, const std::string& format,
                const StyleConfig& style, unsigned jobs, std::ostream& out) {
    const auto graph = layout(dfa);
    const auto table = transition_table(dfa);

    if (format == "static") {
        write_text_file(dir / "diagram.svg", render_static(graph, table, style, input));
        out << "wrote " << (dir / "diagram.svg").string() << '\n';
        return;
    }
    const auto trace = simulate(dfa, input);
    const auto timeline = build_timeline(dfa, trace, graph, style);
    if (format == "timeline") {
        write_text_file(dir / "timeline.txt", serialize_timeline(timeline));
        out << "wrote " << (dir / "timeline.txt").string() << " (" << timeline.groups.size() << " groups)\n";
    } else if (format == "animated-svg") {
        write_text_file(dir / "animation.svg", render_animated_svg(timeline, graph, table, style));
        const FrameManifest manifest{style.fps, frame_count(timeline.total_duration(), style.fps), timeline.total_duration()};
        write_text_file(dir / manifest_file_name,
                        fmt::format("fsmr-animation 1\nfile: animation.svg\nduration: {}\n", format_seconds(manifest.duration)));
        out << "wrote " << (dir / "animation.svg").string() << " (" << format_seconds(manifest.duration) << " s)\n";
    } else {
        const auto manifest = write_frames(dir, timeline, graph, table, style, jobs);
        out << "wrote " << manifest.frame_count << " frames to " << dir.string() << '\n';
    }
}

int cmd_render(const RenderOptions& o, std::ostream& out) {
    const Dfa dfa = load_dfa(o.machine, o.trap);
    const StyleConfig style = o.style.resolve();
    const auto input = decode_input(o.input);
    // Reject bad input before touching the output directory.
    if (o.format != "static") simulate(dfa, input);
    prepare_output_directory(o.out_dir, o.force);
    render_run(dfa, input, o.out_dir, o.format, style, o.jobs, out);
    return 0;
}

struct ConvertOptions {
    std::vector<std::string> positionals;
    std::optional<std::string> regex;
    std::string alphabet;
    std::string out_path;
};

MachineDefinition regex_definition(const std::string& regex, const std::string& alphabet) {
    MachineDefinition d = to_definition(regex_to_nfa(parse_regex(regex), parse_alphabet(alphabet)));
    d.title = "regex " + regex;
    return d;
}

int cmd_convert(const ConvertOptions& o, std::ostream& out) {
    const auto expected = o.regex ? 1u : 2u;
    if (o.positionals.size() != expected) {
        throw UsageError(o.regex ? "usage: fsmr convert --regex <regex> regex-to-nfa -o <out.fsm>"
                                 : "usage: fsmr convert <machine.fsm> <nfa-to-dfa|minimize> -o <out.fsm>");
    }
    const auto& stage_text = o.positionals.back();
    const auto stage = parse_stage(stage_text);
    if (!stage) throw UsageError(fmt::format("unknown stage '{}' (expected regex-to-nfa, nfa-to-dfa or minimize)", stage_text));

    MachineDefinition result;
    if (*stage == Stage::regex_to_nfa) {
        if (!o.regex) throw UsageError("regex-to-nfa needs --regex <regex>");
        result = regex_definition(*o.regex, o.alphabet);
    } else {
        if (o.regex) throw UsageError(fmt::format("{} takes a machine file, not --regex; run regex-to-nfa first", stage_text));
        const auto definition = load_definition(o.positionals.front());
        if (*stage == Stage::nfa_to_dfa) {
            if (definition.kind == MachineKind::dfa) {
                throw UsageError(fmt::format("'{}' is already deterministic; nothing to convert", o.positionals.front()));
            }
            result = to_definition(subset_construction(validate_nfa(definition)));
        } else {
            if (definition.kind == MachineKind::nfa) {
                throw UsageError(fmt::format("minimize needs a dfa but '{}' is an nfa; run nfa-to-dfa first",
                                             o.positionals.front()));
            }
            result = to_definition(minimize(validate_dfa(definition)));
        }
    }
    write_text_file(o.out_path, serialize_definition(result));
    out << "wrote " << o.out_path << " (" << to_string(result.kind) << ", " << result.states.size() << " states)\n";
    return 0;
}

struct ChainOptions {
    std::vector<std::string> positionals;
    std::optional<std::string> regex;
    std::string alphabet;
    std::string out_dir;
    std::optional<std::string> input;
    bool force = false;
    unsigned jobs = 1;
    StyleOptions style;
};

int cmd_chain(const ChainOptions& o, std::ostream& out) {
    std::vector<std::string> stage_texts = o.positionals;
    std::optional<MachineDefinition> source_definition;
    SourceKind source = SourceKind::regex;
    if (!o.regex) {
        if (stage_texts.empty()) throw UsageError("chain needs --regex <regex> or a source machine file");
        const auto path = stage_texts.front();
        stage_texts.erase(stage_texts.begin());
        source_definition = load_definition(path);
        source = source_definition->kind == MachineKind::dfa ? SourceKind::dfa : SourceKind::nfa;
    }
    std::vector<Stage> stages;
    for (const auto& text : stage_texts) {
        const auto stage = parse_stage(text);
        if (!stage) throw UsageError(fmt::format("unknown stage '{}' (expected nfa, dfa or min)", text));
        stages.push_back(*stage);
    }
    ChainPlan plan;
    try {
        plan = make_chain_plan(source, stages);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const bool final_is_dfa = !plan.stages.empty() ? plan.stages.back() != Stage::regex_to_nfa : source == SourceKind::dfa;
    if (o.input && !final_is_dfa) throw UsageError("--input needs the chain to end in a dfa (add a dfa stage)");
    const StyleConfig style = o.style.resolve();

    prepare_output_directory(o.out_dir, o.force);
    const fs::path dir = o.out_dir;

    std::optional<Nfa> nfa;
    std::optional<Dfa> dfa;
    if (source_definition) {
        if (source == SourceKind::dfa) {
            dfa = validate_dfa(*source_definition);
        } else {
            nfa = validate_nfa(*source_definition);
        }
    }

    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        MachineDefinition written;
        switch (plan.stages[i]) {
            case Stage::regex_to_nfa:
                written = regex_definition(*o.regex, o.alphabet);
                nfa = validate_nfa(written);
                break;
            case Stage::nfa_to_dfa:
                dfa = subset_construction(*nfa);
                written = to_definition(*dfa);
                break;
            case Stage::minimize: {
                const Dfa minimal = minimize(*dfa);
                const auto check = equivalent(*dfa, minimal);
                if (!check.equivalent) {
                    throw std::logic_error(fmt::format("minimized machine differs from its input on '{}'",
                                                       utf8::encode(*check.counterexample)));
                }
                dfa = minimal;
                written = to_definition(*dfa);
                break;
            }
        }
        write_text_file(dir / plan.outputs[i], serialize_definition(written));
        out << fmt::format("stage {} {}: wrote {} ({} states)\n", i + 1, stage_name(plan.stages[i]),
                           (dir / plan.outputs[i]).string(), written.states.size());
    }

    if (o.input) {
        const auto input = decode_input(*o.input);
        const bool ok = accepts(*dfa, input);
        const fs::path sim = dir / "simulation";
        prepare_output_directory(sim, true);
        render_run(*dfa, input, sim, "frames", style, o.jobs, out);
        out << (ok ? "ACCEPTED" : "REJECTED") << '\n';
    }
    return 0;
}

}  // namespace

ChainPlan make_chain_plan(SourceKind source, const std::vector<Stage>& stages) {
    if (stages.empty()) throw std::invalid_argument("no stages given (expected some of: nfa dfa min)");
    ChainPlan plan{source, stages, {}};
    SourceKind current = source;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        switch (stages[i]) {
            case Stage::regex_to_nfa:
                if (i != 0 || source != SourceKind::regex) {
                    throw std::invalid_argument(fmt::format(
                        "regex-to-nfa can only be the first stage of a chain that starts from --regex (got {})",
                        i == 0 ? source_name(source) : "an earlier stage"));
                }
                current = SourceKind::nfa;
                break;
            case Stage::nfa_to_dfa:
                if (current != SourceKind::nfa) {
                    throw std::invalid_argument(fmt::format("nfa-to-dfa needs an nfa but stage {} receives {}", i + 1,
                                                            source_name(current)));
                }
                current = SourceKind::dfa;
                break;
            case Stage::minimize:
                if (current != SourceKind::dfa) {
                    throw std::invalid_argument(
                        fmt::format("minimize needs a dfa but stage {} receives {}", i + 1, source_name(current)));
                }
                break;
        }
        plan.outputs.push_back(fmt::format("{:02d}-{}.fsm", i + 1, short_name(stages[i])));
    }
    return plan;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-state machine simulation renderer and automata converter", "fsmr"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    SimulateOptions sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a dfa on an input and print each step; exit 0 accept, 1 reject");
    simulate_cmd->add_option("machine", sim.machine, "Machine file (.fsm)")->required();
    simulate_cmd->add_option("input", sim.input, "Input string (use \"\" for the empty string)")->required();
    simulate_cmd->add_option("--complete-with-trap", sim.trap, "Route missing transitions to a new trap state NAME");

    RenderOptions ren;
    auto* render_cmd = app.add_subcommand("render", "Render the simulation of a dfa on an input");
    render_cmd->add_option("machine", ren.machine, "Machine file (.fsm)")->required();
    render_cmd->add_option("input", ren.input, "Input string (default: empty)");
    render_cmd->add_option("-o,--out", ren.out_dir, "Output directory")->required();
    render_cmd->add_option("--format", ren.format, "frames (default), animated-svg, timeline or static")
        ->check(CLI::IsMember({"frames", "animated-svg", "timeline", "static"}));
    render_cmd->add_option("--complete-with-trap", ren.trap, "Route missing transitions to a new trap state NAME");
    render_cmd->add_flag("--force", ren.force, "Overwrite a non-empty output directory");
    render_cmd->add_option("--jobs", ren.jobs, "Threads used to write frames (output is identical for any value)")
        ->check(CLI::Range(1u, 256u));
    add_style_options(*render_cmd, ren.style);

    ConvertOptions conv;
    auto* convert_cmd = app.add_subcommand("convert", "Convert a machine: regex-to-nfa, nfa-to-dfa or minimize");
    convert_cmd->add_option("args", conv.positionals, "[machine.fsm] stage")->required();
    convert_cmd->add_option("--regex", conv.regex, "Source regex for regex-to-nfa");
    convert_cmd->add_option("--alphabet", conv.alphabet, "Extra alphabet symbols for regex-to-nfa, e.g. \"abc\"");
    convert_cmd->add_option("-o,--out", conv.out_path, "Output machine file (.fsm)")->required();

    ChainOptions chain;
    auto* chain_cmd = app.add_subcommand("chain", "Run conversion stages in sequence (nfa, dfa, min)");
    chain_cmd->add_option("args", chain.positionals, "[source.fsm] stage...")->required();
    chain_cmd->add_option("--regex", chain.regex, "Start from this regex instead of a machine file");
    chain_cmd->add_option("--alphabet", chain.alphabet, "Extra alphabet symbols for the regex stage");
    chain_cmd->add_option("-o,--out", chain.out_dir, "Output directory for per-stage machine files")->required();
    chain_cmd->add_option("--input", chain.input, "Render the final machine's simulation on this input");
    chain_cmd->add_flag("--force", chain.force, "Overwrite a non-empty output directory");
    chain_cmd->add_option("--jobs", chain.jobs, "Threads used to write frames")->check(CLI::Range(1u, 256u));
    add_style_options(*chain_cmd, chain.style);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << "run with --help for usage\n";
        return failure;
    }

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(sim, out);
        if (render_cmd->parsed()) return cmd_render(ren, out);
        if (convert_cmd->parsed()) return cmd_convert(conv, out);
        if (chain_cmd->parsed()) return cmd_chain(chain, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}

}  // namespace fsmr::cli
