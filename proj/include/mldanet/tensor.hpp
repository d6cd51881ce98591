#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mldanet {

/// Dense order-N real tensor. Entries are stored row-major: the last index
/// varies fastest, matching the flattening convention used everywhere else
/// in this library (patches, filters, feature maps).
class DenseTensor {
public:
    DenseTensor() = default;
    explicit DenseTensor(std::vector<std::size_t> dims);
    DenseTensor(std::vector<std::size_t> dims, std::vector<double> data);

    std::size_t order() const { return dims_.size(); }
    std::size_t dim(std::size_t mode) const { return dims_[mode]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return data_.size(); }

    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    // order-3 element access, bounds unchecked
    double at3(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(i * dims_[1] + j) * dims_[2] + k];
    }
    double& at3(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(i * dims_[1] + j) * dims_[2] + k];
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    std::vector<std::size_t> dims_;
    std::vector<double> data_;
};

/// Row-major dense matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    const double* row(std::size_t i) const { return data_.data() + i * cols_; }
    double* row(std::size_t i) { return data_.data() + i * cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Square patch footprint for stage-1/stage-2 feature extraction. Only odd
/// sizes >= 3 are accepted so that "same" zero padding keeps the patch grid
/// exactly I1 x I2.
struct PatchSpec {
    PatchSpec(std::size_t k1, std::size_t k2);
    std::size_t k1 = 3;
    std::size_t k2 = 3;
    std::size_t pad1() const { return (k1 - 1) / 2; }
    std::size_t pad2() const { return (k2 - 1) / 2; }
};

/// All overlapping tensor patches of one or more samples. source[i] records
/// (sample id, grid index q); q enumerates (i1, i2) row-major, so patch q of
/// a sample lands at map position (q / I2, q % I2).
struct PatchSet {
    std::vector<DenseTensor> patches;
    std::vector<std::pair<std::size_t, std::size_t>> source;
};

/// One unit projection vector per tensor mode.
using ModeVectors = std::vector<std::vector<double>>;

/// n-mode product: contracts mode `mode` of x against the columns of u
/// (u is J x I_mode), replacing that extent by J.
DenseTensor mode_product(const DenseTensor& x, const Matrix& u, std::size_t mode);

/// Projects x to a scalar through one unit vector per mode. Vectors that are
/// not unit-norm within 1e-9 are rejected, not normalized.
double emp_project(const DenseTensor& x, const ModeVectors& vectors);

/// Stacks P scalar projections into a vector; component p uses emps[p].
std::vector<double> tvp_project(const DenseTensor& x, std::span<const ModeVectors> emps);

/// Collects all I1*I2 overlapping k1 x k2 x I3 patches of an order-3 tensor,
/// zero-padding modes 1-2 by (k-1)/2 at the borders.
PatchSet extract_tensor_patches(const DenseTensor& x, const PatchSpec& spec,
                                std::size_t sample_id = 0);

/// Vectorized (row-major) zero-padded k1*k2 patches around every pixel of a
/// 2D map; optionally subtracts each patch's own mean.
std::vector<std::vector<double>> extract_map_patches(const Matrix& f, const PatchSpec& spec,
                                                     bool remove_mean);

/// Same-size 2D filtering with zero padding. This is cross-correlation (the
/// kernel is not flipped): out(i,j) = sum_{a,b} f_pad(i+a-p1, j+b-p2) * v(a,b).
/// Filters here are learned, so the orientation convention is absorbed by
/// learning; it also makes this function the exact dual of
/// extract_map_patches + dot product.
Matrix conv2d_same(const Matrix& f, const Matrix& kernel);

/// Inverse of the patch-grid flattening: scalars[q] lands at (q / cols, q % cols).
Matrix reshape_to_map(std::span<const double> scalars, std::size_t rows, std::size_t cols);

}  // namespace mldanet
