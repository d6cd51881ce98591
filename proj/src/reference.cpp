#include "mldanet/reference.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

namespace mldanet::ref {

namespace {

// flat index of a multi-index under row-major layout
std::size_t flat_index(const std::vector<std::size_t>& idx,
                       const std::vector<std::size_t>& dims) {
    std::size_t f = 0;
    for (std::size_t n = 0; n < dims.size(); ++n) f = f * dims[n] + idx[n];
    return f;
}

bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
    for (std::size_t n = dims.size(); n-- > 0;) {
        if (++idx[n] < dims[n]) return true;
        idx[n] = 0;
    }
    return false;
}

}  // namespace

DenseTensor mode_product(const DenseTensor& x, const Matrix& u, std::size_t mode) {
    std::vector<std::size_t> out_dims = x.dims();
    out_dims[mode] = u.rows();
    DenseTensor out(out_dims);

    std::vector<std::size_t> idx(out_dims.size(), 0);
    do {
        double sum = 0.0;
        std::vector<std::size_t> src = idx;
        for (std::size_t i = 0; i < x.dim(mode); ++i) {
            src[mode] = i;
            sum += x[flat_index(src, x.dims())] * u(idx[mode], i);
        }
        out[flat_index(idx, out_dims)] = sum;
    } while (advance(idx, out_dims));
    return out;
}

double emp_project(const DenseTensor& x, const ModeVectors& vectors) {
    std::vector<std::size_t> idx(x.order(), 0);
    double total = 0.0;
    do {
        double term = x[flat_index(idx, x.dims())];
        for (std::size_t n = 0; n < x.order(); ++n) term *= vectors[n][idx[n]];
        total += term;
    } while (advance(idx, x.dims()));
    return total;
}

std::vector<double> partial_mode_projection(const DenseTensor& x, const ModeVectors& vectors,
                                            std::size_t skip_mode) {
    std::vector<double> out(x.dim(skip_mode), 0.0);
    std::vector<std::size_t> idx(x.order(), 0);
    do {
        double term = x[flat_index(idx, x.dims())];
        for (std::size_t n = 0; n < x.order(); ++n)
            if (n != skip_mode) term *= vectors[n][idx[n]];
        out[idx[skip_mode]] += term;
    } while (advance(idx, x.dims()));
    return out;
}

Matrix conv2d_same(const Matrix& f, const Matrix& kernel) {
    // explicit zero-padded copy, then a dense sliding window
    const std::size_t p1 = (kernel.rows() - 1) / 2, p2 = (kernel.cols() - 1) / 2;
    Matrix padded(f.rows() + 2 * p1, f.cols() + 2 * p2);
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) padded(i + p1, j + p2) = f(i, j);

    Matrix out(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) {
            double sum = 0.0;
            for (std::size_t a = 0; a < kernel.rows(); ++a)
                for (std::size_t b = 0; b < kernel.cols(); ++b)
                    sum += padded(i + a, j + b) * kernel(a, b);
            out(i, j) = sum;
        }
    return out;
}

Matrix stage1_map(const DenseTensor& x, const PatchSpec& spec, const ModeVectors& emp) {
    PatchSet patches = extract_tensor_patches(x, spec);
    Matrix out(x.dim(0), x.dim(1));
    for (std::size_t q = 0; q < patches.patches.size(); ++q)
        out.data()[q] = mldanet::emp_project(patches.patches[q], emp);
    return out;
}

void mode_scatters(const std::vector<std::vector<double>>& projections,
                   const std::vector<int>& labels, Matrix& between, Matrix& within) {
    const std::size_t dim = projections.front().size();
    const std::size_t count = projections.size();

    std::map<int, std::vector<double>> class_sum;
    std::map<int, std::size_t> class_count;
    std::vector<double> total(dim, 0.0);
    for (std::size_t m = 0; m < count; ++m) {
        auto& sum = class_sum[labels[m]];
        sum.resize(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            sum[i] += projections[m][i];
            total[i] += projections[m][i];
        }
        ++class_count[labels[m]];
    }
    for (double& v : total) v /= static_cast<double>(count);

    between = Matrix(dim, dim);
    within = Matrix(dim, dim);
    for (const auto& [label, sum] : class_sum) {
        const double n_c = static_cast<double>(class_count[label]);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                between(i, j) +=
                    n_c * (sum[i] / n_c - total[i]) * (sum[j] / n_c - total[j]);
    }
    for (std::size_t m = 0; m < count; ++m) {
        const auto& sum = class_sum[labels[m]];
        const double n_c = static_cast<double>(class_count[labels[m]]);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                within(i, j) += (projections[m][i] - sum[i] / n_c) *
                                (projections[m][j] - sum[j] / n_c);
    }
}

std::vector<double> block_histogram(const std::vector<std::uint32_t>& values,
                                    std::size_t map_cols, std::size_t row0, std::size_t col0,
                                    std::size_t rows, std::size_t cols, std::size_t bins) {
    std::vector<double> hist(bins, 0.0);
    for (std::size_t i = row0; i < row0 + rows; ++i)
        for (std::size_t j = col0; j < col0 + cols; ++j) {
            const std::uint32_t v = values[i * map_cols + j];
            if (v >= bins) throw std::runtime_error("hash value out of range");
            hist[v] += 1.0;
        }
    return hist;
}

}  // namespace mldanet::ref
