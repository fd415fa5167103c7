#pragma once

#include <cstddef>
#include <vector>

namespace entailguard {

// Dense row-major float matrix. Small enough to pass by value when needed;
// the kernels below take references.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0f) {}

    float* row(std::size_t r) { return data.data() + r * cols; }
    const float* row(std::size_t r) const { return data.data() + r * cols; }
    float& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    float at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

namespace kernels {

// OpenMP-parallel kernels. Each output element is computed by exactly one
// thread with the same inner-loop order as the serial reference, so results
// are bit-identical to kernels::serial regardless of thread count.

// y[m,out] = x[m,in] * w[out,in]^T + b; w rows are output features.
void linear(const Mat& x, const Mat& w, const std::vector<float>& bias, Mat& y);

// c[m,n] = a[m,k] * b[n,k]^T, scaled.
void matmul_nt(const Mat& a, const Mat& b, float scale, Mat& c);

// c[m,n] = a[m,k] * b[k,n].
void matmul_nn(const Mat& a, const Mat& b, Mat& c);

// Per-row mean/variance normalization with learned gain and bias.
void layer_norm_rows(Mat& x, const std::vector<float>& gamma, const std::vector<float>& beta,
                     float eps);

// Row-wise softmax over the first valid[r] columns; remaining columns are
// forced to exactly zero. valid[r] >= 1 required.
void softmax_rows(Mat& x, const std::vector<std::size_t>& valid);

void gelu_inplace(Mat& x);   // exact erf form
void tanh_inplace(Mat& x);
void add_inplace(Mat& a, const Mat& b);

// Serial reference implementations, kept for testing and benchmarking.
namespace serial {
void linear(const Mat& x, const Mat& w, const std::vector<float>& bias, Mat& y);
void matmul_nt(const Mat& a, const Mat& b, float scale, Mat& c);
void matmul_nn(const Mat& a, const Mat& b, Mat& c);
void layer_norm_rows(Mat& x, const std::vector<float>& gamma, const std::vector<float>& beta,
                     float eps);
void softmax_rows(Mat& x, const std::vector<std::size_t>& valid);
}  // namespace serial

}  // namespace kernels
}  // namespace entailguard
