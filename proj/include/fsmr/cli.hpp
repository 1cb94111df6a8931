#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsmr::cli {

/// Process exit codes. simulate maps the verdict onto accepted/rejected;
/// every other command exits 0 on success.
enum ExitCode : int { accepted = 0, rejected = 1, failure = 2 };

enum class Stage { regex_to_nfa, nfa_to_dfa, minimize };

/// What a chain starts from.
enum class SourceKind { regex, nfa, dfa };

struct ChainPlan {
    SourceKind source = SourceKind::regex;
    std::vector<Stage> stages;
    std::vector<std::string> outputs;  ///< one file name per stage
};

/// Accepts `regex-to-nfa`/`nfa`, `nfa-to-dfa`/`dfa`, `minimize`/`min`.
std::optional<Stage> parse_stage(std::string_view name);
std::string_view stage_name(Stage stage);

/// Checks the stage sequence is type-correct for the source and names the
/// per-stage outputs. Throws std::invalid_argument with guidance otherwise.
ChainPlan make_chain_plan(SourceKind source, const std::vector<Stage>& stages);

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsmr::cli
