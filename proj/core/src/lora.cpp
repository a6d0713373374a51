#include "rsod/lora.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rsod {

namespace {

void check_finite(const Matrix& m, const char* name) {
    for (double v : m.data) {
        if (!std::isfinite(v)) {
            throw DimensionMismatch(std::string("matrix ") + name + " has non-finite entries");
        }
    }
}

// Top 53 bits of the engine output, mapped to [0, 1).
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) {
        throw DimensionMismatch("matmul: " + std::to_string(a.rows) + "x" +
                                std::to_string(a.cols) + " * " + std::to_string(b.rows) + "x" +
                                std::to_string(b.cols));
    }
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t l = 0; l < a.cols; ++l) {
            const double ail = a.at(i, l);
            for (std::size_t j = 0; j < b.cols; ++j) {
                out.at(i, j) += ail * b.at(l, j);
            }
        }
    }
    return out;
}

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
    if (m.cols != x.size()) {
        throw DimensionMismatch("matvec: " + std::to_string(m.rows) + "x" +
                                std::to_string(m.cols) + " * vector of length " +
                                std::to_string(x.size()));
    }
    std::vector<double> out(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) acc += m.at(i, j) * x[j];
        out[i] = acc;
    }
    return out;
}

LowRankAdapter make_adapter(Matrix w0, Matrix b, Matrix a) {
    const std::size_t d = w0.rows;
    const std::size_t k = w0.cols;
    const std::size_t r = b.cols;
    if (d == 0 || k == 0) throw DimensionMismatch("adapter: empty base weight");
    if (b.rows != d || a.cols != k || a.rows != r) {
        throw DimensionMismatch("adapter: non-conformable factors (w0 " + std::to_string(d) +
                                "x" + std::to_string(k) + ", b " + std::to_string(b.rows) + "x" +
                                std::to_string(b.cols) + ", a " + std::to_string(a.rows) + "x" +
                                std::to_string(a.cols) + ")");
    }
    if (r < 1 || r > std::min(d, k)) {
        throw DimensionMismatch("adapter: rank " + std::to_string(r) +
                                " outside [1, min(d,k)=" + std::to_string(std::min(d, k)) + "]");
    }
    check_finite(w0, "w0");
    check_finite(b, "b");
    check_finite(a, "a");
    return LowRankAdapter{std::move(w0), std::move(b), std::move(a), r};
}

std::vector<double> lora_forward(const LowRankAdapter& adapter, const std::vector<double>& x) {
    std::vector<double> h = matvec(adapter.w0, x);
    const std::vector<double> ax = matvec(adapter.a, x);
    const std::vector<double> bax = matvec(adapter.b, ax);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += bax[i];
    return h;
}

Matrix merge(const LowRankAdapter& adapter) {
    Matrix out = matmul(adapter.b, adapter.a);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += adapter.w0.data[i];
    return out;
}

double noise_scale(const NoiseSpec& spec) {
    if (spec.alpha < 0.0) throw std::invalid_argument("noise_scale: alpha must be >= 0");
    if (spec.seq_len < 1 || spec.dim < 1) {
        throw std::invalid_argument("noise_scale: seq_len and dim must be >= 1");
    }
    return spec.alpha / std::sqrt(static_cast<double>(spec.seq_len * spec.dim));
}

Tensor3 neftune_sample(const NoiseSpec& spec, std::size_t batch) {
    const double s = noise_scale(spec);
    Tensor3 out(batch, spec.seq_len, spec.dim);
    std::mt19937_64 rng(spec.seed);
    for (double& v : out.data) {
        v = s * (2.0 * unit_double(rng) - 1.0);
    }
    return out;
}

Tensor3 neftune_inject(const Tensor3& x, const NoiseSpec& spec) {
    if (x.seq_len != spec.seq_len || x.dim != spec.dim) {
        throw ShapeMismatch("neftune_inject: tensor (" + std::to_string(x.batch) + "," +
                            std::to_string(x.seq_len) + "," + std::to_string(x.dim) +
                            ") does not match spec (" + std::to_string(spec.seq_len) + "," +
                            std::to_string(spec.dim) + ")");
    }
    Tensor3 noisy = neftune_sample(spec, x.batch);
    for (std::size_t i = 0; i < noisy.data.size(); ++i) noisy.data[i] += x.data[i];
    return noisy;
}

}  // namespace rsod
