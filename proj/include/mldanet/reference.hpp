#pragma once

#include "mldanet/tensor.hpp"

#include <vector>

namespace mldanet::ref {

// Serial, definition-literal implementations of the hot kernels. They share
// nothing with the OpenMP paths except the containers and are kept as the
// independent oracle for the test suites and as the baseline side of the
// benchmark.

DenseTensor mode_product(const DenseTensor& x, const Matrix& u, std::size_t mode);

double emp_project(const DenseTensor& x, const ModeVectors& vectors);

std::vector<double> partial_mode_projection(const DenseTensor& x, const ModeVectors& vectors,
                                            std::size_t skip_mode);

Matrix conv2d_same(const Matrix& f, const Matrix& kernel);

/// Per-pixel stage-1 map: extracts the zero-padded patch at every grid cell
/// and projects it through the given mode vectors.
Matrix stage1_map(const DenseTensor& x, const PatchSpec& spec, const ModeVectors& emp);

/// Class-scatter matrices by direct definition: between = sum_c N_c d_c d_c^T
/// with d_c = classmean - mean, within = sum_m r_m r_m^T with r_m = y_m - classmean.
void mode_scatters(const std::vector<std::vector<double>>& projections,
                   const std::vector<int>& labels, Matrix& between, Matrix& within);

/// Histogram counting by direct definition.
std::vector<double> block_histogram(const std::vector<std::uint32_t>& values,
                                    std::size_t map_cols, std::size_t row0, std::size_t col0,
                                    std::size_t rows, std::size_t cols, std::size_t bins);

}  // namespace mldanet::ref
