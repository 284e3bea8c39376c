#pragma once
#include <cstdint>
#include <random>

#include "entq/expansions/map.hpp"
#include "entq/numeric/policy.hpp"

namespace entq {

// One SplitMix64 step. Small, fully specified, and good enough to whiten
// trial indices into seeds; the heavy lifting is done by mt19937_64.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed of trial `index` under `master`: SplitMix64 applied to
// master + (index + 1) * golden gamma. Distinct indices give unrelated
// streams, and the derived seed is part of the trial record so a single
// trial can be replayed without rerunning its predecessors.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// The per-trial generator: mt19937_64 seeded directly with the derived
// seed. mt19937_64 is fully specified by the standard, so identical seeds
// reproduce identical streams on any conforming implementation.
std::mt19937_64 trial_stream(std::uint64_t derived_seed);

// Uniform draw from {0, ..., bound-1} by rejection; exact, no modulo bias.
long uniform_below(std::mt19937_64& gen, long bound);

// Random admissible digit word of length n for mapS. Radix maps draw n
// i.i.d. uniform digits. Every other map draws a random rational with
// n + 10 uniform decimal digits and expands it, so the word is the genuine
// expansion of a point of [0,1); expansions that terminate early trigger a
// redraw. The policy bounds the precision ladder of the expansion.
DigitSeq random_seed_digits(const MapPtr& mapS, std::size_t n, std::mt19937_64& gen,
                            const PrecisionPolicy& policy);

}  // namespace entq
