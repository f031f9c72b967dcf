#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "latefuse/fusion.hpp"
#include "latefuse/kelm.hpp"
#include "latefuse/types.hpp"
#include "latefuse/windowing.hpp"

namespace latefuse::ref {

/// Serial twins of the parallel kernels. Each performs the same arithmetic
/// in the same order as its OpenMP counterpart, so outputs must be
/// bit-identical; tests and the benchmark tool rely on that.

ScoreTrack fuse_swf(const AlignedDataset& dataset, const SwfWeights& weights);
ScoreTrack fuse_mcwf(const AlignedDataset& dataset, const McwfWeights& weights);

std::vector<double> pool_mean_std(std::span<const double> frames, std::size_t dim);

std::vector<double> kernel_matrix(std::span<const double> a, std::size_t rows_a,
                                  std::span<const double> b, std::size_t rows_b,
                                  std::size_t dim, const KernelSpec& spec);

/// Evaluates every optimizer candidate serially; element i equals the
/// parallel optimizer's trace[i].
std::vector<double> sweep_candidates(const AlignedDataset& data, FusionMode mode,
                                     const SearchConfig& config);

}  // namespace latefuse::ref
