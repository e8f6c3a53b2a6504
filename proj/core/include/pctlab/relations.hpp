#pragma once

#include "pctlab/chain.hpp"
#include "pctlab/geometry.hpp"
#include "pctlab/machine.hpp"
#include "pctlab/translate.hpp"

#include <cstddef>
#include <optional>

namespace pctlab {

/// Whether states are read against a single machine's propositions or
/// against the side-tagged propositions of a synchronized product.
enum class SimMode { OneCounter, Product };

/// The configuration a state stands for, if any: it must carry exactly
/// one label proposition (one per side and agreeing, in product mode)
/// and its one-step a/b masses must equal sigma^n(kappa) for some n,
/// which becomes the decoded counter (per side, in product mode).
std::optional<Configuration> represented_configuration(const GeometryConstants& g,
                                                       const MarkovChain& mc, int state,
                                                       SimMode mode);

/// True when the state stands for exactly the given configuration.
bool represents(const GeometryConstants& g, const MarkovChain& mc, int state,
                const Configuration& config, SimMode mode);

/// Checks, over all states reachable from `start` (capped by max_states,
/// exceeding it raises InputError), that every representing state has a
/// successor representing a legal machine step from its configuration,
/// and that every non-representing successor of a representing state
/// never carries a label again along any path.
ValidationReport simulates(const GeometryConstants& g, const MarkovChain& mc, int start,
                           const Machine& m, std::size_t max_states);
ValidationReport simulates(const GeometryConstants& g, const MarkovChain& mc, int start,
                           const SyncProduct& p, std::size_t max_states);

/// True when some run from `start` represents the computation's first
/// `steps` configurations in order, following representing successors.
bool covers(const GeometryConstants& g, const MarkovChain& mc, int start,
            const Computation& comp, std::size_t steps, SimMode mode);

} // namespace pctlab
