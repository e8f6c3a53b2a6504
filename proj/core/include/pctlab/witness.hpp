#pragma once

#include "pctlab/chain.hpp"
#include "pctlab/geometry.hpp"
#include "pctlab/machine.hpp"
#include "pctlab/translate.hpp"

namespace pctlab {

/// Branch mass of the d-marked companion under a live c state holding
/// count n >= 1. Chosen so that a two-step probe from the preceding
/// state meets the gamma weight exactly. Throws InvariantError when the
/// value leaves (0, 1 - sigma^n(kappa).x1 - sigma^n(kappa).x2), which
/// would make the sibling rows infeasible.
Rat d_mass(const GeometryConstants& g, long long n);

/// Chain satisfying the counting family at parameter n: a spine
/// t_n, ..., t_0 counting down with one frozen b and c companion per
/// step and a three-state frozen fan after t_0. The start state is t_n.
/// Uses 3n + 4 states.
MarkovChain model_counting(const GeometryConstants& g, int n);

/// Chain satisfying the machine family along a periodic run. The run's
/// cycle is unrolled until the register rotation closes (once or five
/// times), giving one spine state per step; auxiliary count-down and
/// frozen states are shared. Requires a valid single-counter machine
/// and a periodic computation that follows it; otherwise InputError.
MarkovChain model_machine(const GeometryConstants& g, const Machine& m,
                          const Computation& comp);

/// Chain satisfying the product family along a periodic joint run of a
/// synchronized pair. Spine states carry both sides' propositions; off
/// the spine each side decays through its own count-down states, paired
/// so that both marginals stay exact. Requirements mirror model_machine.
MarkovChain model_product(const GeometryConstants& g, const SyncProduct& p,
                          const Computation& comp);

} // namespace pctlab
