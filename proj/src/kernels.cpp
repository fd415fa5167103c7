#include "entailguard/kernels.hpp"

#include <cassert>
#include <cmath>

namespace entailguard::kernels {

namespace {

inline float dot(const float* a, const float* b, std::size_t n) {
    float acc = 0.0f;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

inline void linear_row(const Mat& x, const Mat& w, const std::vector<float>& bias, Mat& y,
                       std::size_t r) {
    const float* xr = x.row(r);
    float* yr = y.row(r);
    for (std::size_t o = 0; o < w.rows; ++o) yr[o] = bias[o] + dot(xr, w.row(o), x.cols);
}

inline void matmul_nt_row(const Mat& a, const Mat& b, float scale, Mat& c, std::size_t r) {
    const float* ar = a.row(r);
    float* cr = c.row(r);
    for (std::size_t j = 0; j < b.rows; ++j) cr[j] = scale * dot(ar, b.row(j), a.cols);
}

inline void matmul_nn_row(const Mat& a, const Mat& b, Mat& c, std::size_t r) {
    const float* ar = a.row(r);
    float* cr = c.row(r);
    for (std::size_t j = 0; j < b.cols; ++j) {
        float acc = 0.0f;
        for (std::size_t k = 0; k < a.cols; ++k) acc += ar[k] * b.at(k, j);
        cr[j] = acc;
    }
}

inline void layer_norm_row(Mat& x, const std::vector<float>& gamma, const std::vector<float>& beta,
                           float eps, std::size_t r) {
    float* xr = x.row(r);
    float mean = 0.0f;
    for (std::size_t c = 0; c < x.cols; ++c) mean += xr[c];
    mean /= static_cast<float>(x.cols);
    float var = 0.0f;
    for (std::size_t c = 0; c < x.cols; ++c) var += (xr[c] - mean) * (xr[c] - mean);
    var /= static_cast<float>(x.cols);
    const float inv = 1.0f / std::sqrt(var + eps);
    for (std::size_t c = 0; c < x.cols; ++c) xr[c] = (xr[c] - mean) * inv * gamma[c] + beta[c];
}

inline void softmax_row(Mat& x, const std::vector<std::size_t>& valid, std::size_t r) {
    float* xr = x.row(r);
    const std::size_t n = valid[r];
    float m = xr[0];
    for (std::size_t c = 1; c < n; ++c) m = std::max(m, xr[c]);
    float sum = 0.0f;
    for (std::size_t c = 0; c < n; ++c) {
        xr[c] = std::exp(xr[c] - m);
        sum += xr[c];
    }
    for (std::size_t c = 0; c < n; ++c) xr[c] /= sum;
    for (std::size_t c = n; c < x.cols; ++c) xr[c] = 0.0f;
}

}  // namespace

void linear(const Mat& x, const Mat& w, const std::vector<float>& bias, Mat& y) {
    assert(x.cols == w.cols && bias.size() == w.rows);
    y = Mat(x.rows, w.rows);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(x.rows);
#pragma omp parallel for
    for (std::ptrdiff_t r = 0; r < m; ++r) linear_row(x, w, bias, y, static_cast<std::size_t>(r));
}

void matmul_nt(const Mat& a, const Mat& b, float scale, Mat& c) {
    assert(a.cols == b.cols);
    c = Mat(a.rows, b.rows);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for
    for (std::ptrdiff_t r = 0; r < m; ++r) matmul_nt_row(a, b, scale, c, static_cast<std::size_t>(r));
}

void matmul_nn(const Mat& a, const Mat& b, Mat& c) {
    assert(a.cols == b.rows);
    c = Mat(a.rows, b.cols);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for
    for (std::ptrdiff_t r = 0; r < m; ++r) matmul_nn_row(a, b, c, static_cast<std::size_t>(r));
}

void layer_norm_rows(Mat& x, const std::vector<float>& gamma, const std::vector<float>& beta,
                     float eps) {
    assert(gamma.size() == x.cols && beta.size() == x.cols);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(x.rows);
#pragma omp parallel for
    for (std::ptrdiff_t r = 0; r < m; ++r)
        layer_norm_row(x, gamma, beta, eps, static_cast<std::size_t>(r));
}

void softmax_rows(Mat& x, const std::vector<std::size_t>& valid) {
    assert(valid.size() == x.rows);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(x.rows);
#pragma omp parallel for
    for (std::ptrdiff_t r = 0; r < m; ++r) softmax_row(x, valid, static_cast<std::size_t>(r));
}

void gelu_inplace(Mat& x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.data.size());
#pragma omp parallel for
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const float v = x.data[static_cast<std::size_t>(i)];
        x.data[static_cast<std::size_t>(i)] =
            0.5f * v * (1.0f + std::erf(v * 0.70710678118654752f));
    }
}

void tanh_inplace(Mat& x) {
    for (auto& v : x.data) v = std::tanh(v);
}

void add_inplace(Mat& a, const Mat& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
}

namespace serial {

void linear(const Mat& x, const Mat& w, const std::vector<float>& bias, Mat& y) {
    assert(x.cols == w.cols && bias.size() == w.rows);
    y = Mat(x.rows, w.rows);
    for (std::size_t r = 0; r < x.rows; ++r) linear_row(x, w, bias, y, r);
}

void matmul_nt(const Mat& a, const Mat& b, float scale, Mat& c) {
    assert(a.cols == b.cols);
    c = Mat(a.rows, b.rows);
    for (std::size_t r = 0; r < a.rows; ++r) matmul_nt_row(a, b, scale, c, r);
}

void matmul_nn(const Mat& a, const Mat& b, Mat& c) {
    assert(a.cols == b.rows);
    c = Mat(a.rows, b.cols);
    for (std::size_t r = 0; r < a.rows; ++r) matmul_nn_row(a, b, c, r);
}

void layer_norm_rows(Mat& x, const std::vector<float>& gamma, const std::vector<float>& beta,
                     float eps) {
    assert(gamma.size() == x.cols && beta.size() == x.cols);
    for (std::size_t r = 0; r < x.rows; ++r) layer_norm_row(x, gamma, beta, eps, r);
}

void softmax_rows(Mat& x, const std::vector<std::size_t>& valid) {
    assert(valid.size() == x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) softmax_row(x, valid, r);
}

}  // namespace serial

}  // namespace entailguard::kernels
