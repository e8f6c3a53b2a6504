#pragma once

#include "pctlab/machine.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pctlab {

/// Two one-counter machines with the same label set running in lockstep.
/// At every step each machine executes the instruction at the shared
/// current label against its own counter; the next label is drawn from the
/// target set of the side that owns the label.
struct SyncProduct {
    Machine m1;
    Machine m2;
    std::vector<int> owned_by_1;
    std::vector<int> owned_by_2;

    int label_count() const { return m1.label_count(); }
    bool owner_is_1(int label) const;

    /// Throws InputError unless both machines validate, use one counter,
    /// have equal label counts, and the two owner sets partition 1..m.
    void validate() const;

    static SyncProduct from_parts(Machine m1, Machine m2, std::vector<int> owned_by_1,
                                  std::vector<int> owned_by_2);
};

/// Owner-set file {"I1": [labels...], "I2": [labels...]}.
std::pair<std::vector<int>, std::vector<int>> load_partition_text(std::string_view text);
std::pair<std::vector<int>, std::vector<int>> load_partition(const std::string& path);
std::string partition_to_json(const SyncProduct& p);

/// Product configurations carry the shared label and both counters.
std::vector<Configuration> product_successors(const SyncProduct& p, const Configuration& c);

Computation run_with_period_detection(const SyncProduct& p, const Configuration& start,
                                      std::size_t max_steps, const Strategy& strategy);

/// A two-counter machine recompiled as a synchronized product of two
/// one-counter machines. Source label j becomes staged labels j (run the
/// instruction), m+j (drain counter 1), and 2m+j (drain counter 2); each
/// staged label l then splits into product labels 2l-1 (idle side bumps
/// its ghost counter) and 2l (idle side takes the ghost bump back).
struct Translation {
    SyncProduct product;
    int source_labels = 0;
    /// Indexed 1..3m; true when the staged label works on counter 1.
    std::vector<char> on_c1;

    static int encode(int staged_label, bool plus) {
        return plus ? 2 * staged_label : 2 * staged_label - 1;
    }
    static std::pair<int, bool> decode(int product_label) {
        return {(product_label + 1) / 2, product_label % 2 == 0};
    }

    /// Label bookkeeping as JSON, for the sidecar written next to outputs.
    std::string meta_json() const;

    /// Recovers the source-machine trace from a product trace: staged
    /// labels above the source range are dropped, and on the '+' flavor
    /// the idle side's ghost bump is subtracted from its counter.
    std::vector<Configuration> project_trace(const std::vector<Configuration>& trace) const;
};

/// Compiles a machine on counters 1 and 2 into a synchronized product
/// whose runs simulate the source step for step.
Translation two_counter_to_product(const Machine& source);

} // namespace pctlab
