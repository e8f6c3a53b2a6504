#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pctlab {

/// A counter-machine instruction. Inc bumps its counter and jumps to one
/// of `targets`; JzDec jumps to one of `targets` when the counter is zero
/// and otherwise decrements and jumps to one of `else_targets`. Target
/// sets hold one or two labels.
struct Instruction {
    enum class Kind { Inc, JzDec };
    Kind kind = Kind::Inc;
    int counter = 1;
    std::vector<int> targets;
    std::vector<int> else_targets;
};

/// A nondeterministic counter machine. Instruction i (0-based) carries
/// label i+1; counters are numbered from 1.
struct Machine {
    int counters = 1;
    std::vector<Instruction> instructions;

    int label_count() const { return static_cast<int>(instructions.size()); }
    const Instruction& at_label(int label) const;

    /// Parses the line-oriented text format
    ///   i: inc cJ goto {a,b}
    ///   i: jzdec cJ zero {a} else {b,c}
    /// with '#' comments. Labels must appear in order starting at 1.
    static Machine parse(std::string_view text);
    static Machine load(const std::string& path);

    /// Canonical rendering; parse round-trips it.
    std::string to_text() const;
    void save(const std::string& path) const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Structural checks: at least one instruction, counter indices within
/// range, target sets of size one or two pointing at existing labels.
ValidationReport validate_machine(const Machine& m);

struct Configuration {
    int label = 1;
    std::vector<long long> counters;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// All one-step successors in the stored target order. The counter update
/// is deterministic; only the jump target branches.
std::vector<Configuration> successors(const Machine& m, const Configuration& c);

/// Resolves nondeterminism: the k-th branching configuration encountered
/// takes successor index choices[k]; once the list is exhausted the first
/// successor is taken.
struct Strategy {
    std::vector<int> choices;

    /// Comma-separated indices, e.g. "0,1,0"; empty text means no choices.
    static Strategy parse(std::string_view text);
};

/// A finite run, possibly with a detected period. When `period` holds
/// (alpha, beta), the prefix stores configurations 0..beta-1, the
/// configurations at alpha-1 and beta-1 coincide, and the run continues
/// forever by cycling through indices alpha..beta-1.
struct Computation {
    std::vector<Configuration> prefix;
    std::optional<std::pair<int, int>> period;

    bool periodic() const { return period.has_value(); }
    /// Configuration at any step index, following the cycle when periodic.
    const Configuration& config_at(std::size_t k) const;

    std::string to_json() const;
    static Computation from_json_text(std::string_view text);
};

/// Runs from `start`, resolving branches with the strategy. Once the
/// choice list is exhausted configurations are recorded, and the first
/// revisit C_i = C_j (i < j) yields period (i+1, j+1). Stops without a
/// period after max_steps configurations.
Computation run_with_period_detection(const Machine& m, const Configuration& start,
                                      std::size_t max_steps, const Strategy& strategy);

namespace detail {

/// Period-detecting run loop over an arbitrary successor function, shared
/// by plain machines and synchronized products.
Computation run_generic(
    const std::function<std::vector<Configuration>(const Configuration&)>& succ,
    const Configuration& start, std::size_t max_steps, const Strategy& strategy);

} // namespace detail

} // namespace pctlab
