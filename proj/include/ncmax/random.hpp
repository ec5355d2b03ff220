#pragma once

#include <random>

#include "ncmax/algebra.hpp"

namespace ncmax {

using Rng = std::mt19937_64;

// Complex matrix with iid standard complex Gaussian entries per block.
Operator rand_gaussian(const Algebra& a, Rng& rng);
// (g + g*)/2 for a Gaussian g.
Operator rand_hermitian(const Algebra& a, Rng& rng);
// g g* / dim, positive semidefinite with norm around 1.
Operator rand_psd(const Algebra& a, Rng& rng);
// Haar-ish unitary per block (QR of a Gaussian).
Operator rand_unitary(const Algebra& a, Rng& rng);
// Unitary scaled into the closed unit ball.
Operator rand_contraction(const Algebra& a, Rng& rng);
// Projection with the given rank in each block (rank clamped to [0, dim]).
Projection rand_projection(const Algebra& a, const std::vector<int>& ranks,
                           Rng& rng);
// Random partition of identity into `parts` projections per block
// (some parts may be zero in small blocks).
std::vector<Projection> rand_partition(const Algebra& a, int parts, Rng& rng);

}  // namespace ncmax
