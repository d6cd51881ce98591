#include "mldanet/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mldanet {

namespace {

std::size_t checked_volume(const std::vector<std::size_t>& dims) {
    if (dims.empty()) throw std::invalid_argument("tensor order must be >= 1");
    std::size_t n = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("tensor extents must be >= 1");
        n *= d;
    }
    return n;
}

void require_unit(const std::vector<double>& u) {
    double s = 0.0;
    for (double v : u) s += v * v;
    if (std::abs(std::sqrt(s) - 1.0) > 1e-9)
        throw std::invalid_argument("projection vector is not unit-norm");
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> dims)
    : dims_(std::move(dims)), data_(checked_volume(dims_), 0.0) {}

DenseTensor::DenseTensor(std::vector<std::size_t> dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    if (checked_volume(dims_) != data_.size())
        throw std::invalid_argument("tensor data length does not match dimensions");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows_ * cols_ != data_.size())
        throw std::invalid_argument("matrix data length does not match dimensions");
}

PatchSpec::PatchSpec(std::size_t k1_, std::size_t k2_) : k1(k1_), k2(k2_) {
    if (k1 < 3 || k2 < 3 || k1 % 2 == 0 || k2 % 2 == 0)
        throw std::invalid_argument("patch sizes must be odd and >= 3");
}

DenseTensor mode_product(const DenseTensor& x, const Matrix& u, std::size_t mode) {
    if (mode >= x.order())
        throw std::invalid_argument("mode index out of range");
    const std::size_t ext = x.dim(mode);
    if (u.cols() != ext)
        throw std::invalid_argument("matrix columns do not match the contracted mode extent");

    std::size_t outer = 1, inner = 1;
    for (std::size_t m = 0; m < mode; ++m) outer *= x.dim(m);
    for (std::size_t m = mode + 1; m < x.order(); ++m) inner *= x.dim(m);
    const std::size_t rows = u.rows();

    std::vector<std::size_t> out_dims = x.dims();
    out_dims[mode] = rows;
    DenseTensor out(std::move(out_dims));

    const double* src = x.data().data();
    double* dst = out.data().data();

    // Each (o, j) slab is written by exactly one iteration; the sum over the
    // contracted index runs in fixed ascending order, so results are
    // bit-identical for any thread count.
#pragma omp parallel for schedule(static)
    for (long long oj = 0; oj < static_cast<long long>(outer * rows); ++oj) {
        const std::size_t o = static_cast<std::size_t>(oj) / rows;
        const std::size_t j = static_cast<std::size_t>(oj) % rows;
        double* d = dst + (o * rows + j) * inner;
        for (std::size_t i = 0; i < ext; ++i) {
            const double c = u(j, i);
            const double* s = src + (o * ext + i) * inner;
            for (std::size_t t = 0; t < inner; ++t) d[t] += c * s[t];
        }
    }
    return out;
}

double emp_project(const DenseTensor& x, const ModeVectors& vectors) {
    if (vectors.size() != x.order())
        throw std::invalid_argument("need exactly one projection vector per mode");
    for (std::size_t n = 0; n < x.order(); ++n) {
        if (vectors[n].size() != x.dim(n))
            throw std::invalid_argument("projection vector length does not match mode extent");
        require_unit(vectors[n]);
    }

    // Contract the last mode first; the working buffer shrinks by one mode
    // per pass and packs results at the front, so the reduction is in-place.
    std::vector<double> buf(x.data());
    std::size_t len = buf.size();
    for (std::size_t n = x.order(); n-- > 0;) {
        const std::vector<double>& u = vectors[n];
        const std::size_t ext = u.size();
        const std::size_t outer = len / ext;
        for (std::size_t o = 0; o < outer; ++o) {
            const double* row = buf.data() + o * ext;
            double sum = 0.0;
            for (std::size_t i = 0; i < ext; ++i) sum += row[i] * u[i];
            buf[o] = sum;
        }
        len = outer;
    }
    return buf[0];
}

std::vector<double> tvp_project(const DenseTensor& x, std::span<const ModeVectors> emps) {
    std::vector<double> out(emps.size());
    for (std::size_t p = 0; p < emps.size(); ++p) out[p] = emp_project(x, emps[p]);
    return out;
}

PatchSet extract_tensor_patches(const DenseTensor& x, const PatchSpec& spec,
                                std::size_t sample_id) {
    if (x.order() != 3)
        throw std::invalid_argument("tensor patch extraction expects an order-3 tensor");
    const std::size_t rows = x.dim(0), cols = x.dim(1), depth = x.dim(2);
    const std::size_t p1 = spec.pad1(), p2 = spec.pad2();

    PatchSet set;
    set.patches.assign(rows * cols, DenseTensor({spec.k1, spec.k2, depth}));
    set.source.resize(rows * cols);

#pragma omp parallel for schedule(static)
    for (long long q = 0; q < static_cast<long long>(rows * cols); ++q) {
        const std::size_t i1 = static_cast<std::size_t>(q) / cols;
        const std::size_t i2 = static_cast<std::size_t>(q) % cols;
        DenseTensor& patch = set.patches[static_cast<std::size_t>(q)];
        for (std::size_t a = 0; a < spec.k1; ++a) {
            const long long r = static_cast<long long>(i1) + static_cast<long long>(a) -
                                static_cast<long long>(p1);
            if (r < 0 || r >= static_cast<long long>(rows)) continue;
            for (std::size_t b = 0; b < spec.k2; ++b) {
                const long long c = static_cast<long long>(i2) + static_cast<long long>(b) -
                                    static_cast<long long>(p2);
                if (c < 0 || c >= static_cast<long long>(cols)) continue;
                for (std::size_t k = 0; k < depth; ++k)
                    patch.at3(a, b, k) = x.at3(static_cast<std::size_t>(r),
                                               static_cast<std::size_t>(c), k);
            }
        }
        set.source[static_cast<std::size_t>(q)] = {sample_id, static_cast<std::size_t>(q)};
    }
    return set;
}

std::vector<std::vector<double>> extract_map_patches(const Matrix& f, const PatchSpec& spec,
                                                     bool remove_mean) {
    const std::size_t rows = f.rows(), cols = f.cols();
    const std::size_t p1 = spec.pad1(), p2 = spec.pad2();
    const std::size_t len = spec.k1 * spec.k2;

    std::vector<std::vector<double>> patches(rows * cols, std::vector<double>(len, 0.0));

#pragma omp parallel for schedule(static)
    for (long long q = 0; q < static_cast<long long>(rows * cols); ++q) {
        const std::size_t i1 = static_cast<std::size_t>(q) / cols;
        const std::size_t i2 = static_cast<std::size_t>(q) % cols;
        std::vector<double>& patch = patches[static_cast<std::size_t>(q)];
        for (std::size_t a = 0; a < spec.k1; ++a) {
            const long long r = static_cast<long long>(i1) + static_cast<long long>(a) -
                                static_cast<long long>(p1);
            if (r < 0 || r >= static_cast<long long>(rows)) continue;
            for (std::size_t b = 0; b < spec.k2; ++b) {
                const long long c = static_cast<long long>(i2) + static_cast<long long>(b) -
                                    static_cast<long long>(p2);
                if (c < 0 || c >= static_cast<long long>(cols)) continue;
                patch[a * spec.k2 + b] = f(static_cast<std::size_t>(r),
                                           static_cast<std::size_t>(c));
            }
        }
        if (remove_mean) {
            double mean = 0.0;
            for (double v : patch) mean += v;
            mean /= static_cast<double>(len);
            for (double& v : patch) v -= mean;
        }
    }
    return patches;
}

Matrix conv2d_same(const Matrix& f, const Matrix& kernel) {
    if (kernel.rows() % 2 == 0 || kernel.cols() % 2 == 0)
        throw std::invalid_argument("kernel dimensions must be odd");
    const std::size_t rows = f.rows(), cols = f.cols();
    const std::size_t kr = kernel.rows(), kc = kernel.cols();
    const long long p1 = static_cast<long long>(kr - 1) / 2;
    const long long p2 = static_cast<long long>(kc - 1) / 2;

    Matrix out(rows, cols);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(rows); ++i) {
        for (long long j = 0; j < static_cast<long long>(cols); ++j) {
            double sum = 0.0;
            for (std::size_t a = 0; a < kr; ++a) {
                const long long r = i + static_cast<long long>(a) - p1;
                if (r < 0 || r >= static_cast<long long>(rows)) continue;
                for (std::size_t b = 0; b < kc; ++b) {
                    const long long c = j + static_cast<long long>(b) - p2;
                    if (c < 0 || c >= static_cast<long long>(cols)) continue;
                    sum += f(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) *
                           kernel(a, b);
                }
            }
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = sum;
        }
    }
    return out;
}

Matrix reshape_to_map(std::span<const double> scalars, std::size_t rows, std::size_t cols) {
    if (scalars.size() != rows * cols)
        throw std::invalid_argument("scalar count does not match map size");
    Matrix out(rows, cols);
    std::copy(scalars.begin(), scalars.end(), out.data().begin());
    return out;
}

}  // namespace mldanet
