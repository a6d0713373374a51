#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rsod/errors.hpp"

namespace rsod {

// Dense row-major matrix of 64-bit floats. Sized for desk-scale numerics,
// not training.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix identity(std::size_t n);
Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& m, const std::vector<double>& x);

// Frozen base weight w0 (d x k) with the trainable low-rank pair
// b (d x r), a (r x k). The update is b*a exactly; no extra scaling factor
// is applied.
struct LowRankAdapter {
    Matrix w0;
    Matrix b;
    Matrix a;
    std::size_t rank = 0;
};

// Validates conformability and 1 <= r <= min(d, k); throws DimensionMismatch.
LowRankAdapter make_adapter(Matrix w0, Matrix b, Matrix a);

// w0*x + b*(a*x), computed factored; the update matrix is never materialized
// and w0 is never written.
std::vector<double> lora_forward(const LowRankAdapter& adapter, const std::vector<double>& x);

// w0 + b*a as a new matrix; the adapter is unchanged.
Matrix merge(const LowRankAdapter& adapter);

// Uniform noise on [-s, s] with s = alpha / sqrt(seq_len * dim).
struct NoiseSpec {
    double alpha = 0.0;
    std::size_t seq_len = 1;
    std::size_t dim = 1;
    std::uint64_t seed = 0;
};

double noise_scale(const NoiseSpec& spec);

struct Tensor3 {
    std::size_t batch = 0;
    std::size_t seq_len = 0;
    std::size_t dim = 0;
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(std::size_t b, std::size_t l, std::size_t d)
        : batch(b), seq_len(l), dim(d), data(b * l * d, 0.0) {}

    friend bool operator==(const Tensor3&, const Tensor3&) = default;
};

// (batch, seq_len, dim) tensor of i.i.d. Uniform[-s, s] entries. Entries are
// drawn from mt19937_64 seeded with spec.seed, mapped through the top 53
// bits, so identical seeds reproduce bit-identical tensors on any platform.
Tensor3 neftune_sample(const NoiseSpec& spec, std::size_t batch);

// x + neftune_sample(spec, x.batch); throws ShapeMismatch when x does not
// have shape (*, spec.seq_len, spec.dim).
Tensor3 neftune_inject(const Tensor3& x, const NoiseSpec& spec);

// Fine-tuning hyperparameters carried as metadata into build reports and the
// lora-demo output. Nothing here is executed.
struct TrainConfig {
    int epochs = 3;
    double learning_rate = 1e-4;
    std::string scheduler = "cosine";
    double warmup_ratio = 0.1;
    int rank = 32;
};

}  // namespace rsod
