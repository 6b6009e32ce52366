#pragma once

#include <random>

#include "dpwlab/laurent.hpp"
#include "dpwlab/symmetric_space.hpp"

namespace dpwlab {

// Random twisted unimodular loops built from elementary unipotent factors
// (det = 1 exactly by construction). Powers respect the h-parity of the
// entry they sit in, entries are O(scale), degrees land in
// [-max_power, max_power] for few factors.
LaurentMatrix random_twisted_loop(const SymmetricSpaceSpec& spec, std::mt19937& rng,
                                  int factors = 4, double scale = 0.05, int max_power = 1);

// Random loop valued in the compact real form: a product of closed-form
// rank-one rotation loops in h-odd coordinate pairs.
LaurentMatrix random_real_loop(const SymmetricSpaceSpec& spec, std::mt19937& rng,
                               int factors = 2, double scale = 0.05);

// Random twisted plus loop (nonnegative powers, lambda = 0 value diagonal
// with positive entries, det = 1). With pointwise_lower set, every
// coefficient is lower triangular, so the loop evaluates lower triangular
// at each lambda.
LaurentMatrix random_plus_loop(const SymmetricSpaceSpec& spec, std::mt19937& rng, int hi = 2,
                               double scale = 0.3, bool pointwise_lower = false);

// Random constant element of K (block unitary commuting with h, det = 1).
Mat random_k_element(const SymmetricSpaceSpec& spec, std::mt19937& rng);

} // namespace dpwlab
