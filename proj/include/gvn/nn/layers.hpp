#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gvn/nn/tensor.hpp"

namespace gvn::nn {

// Layers follow one protocol: forward(x) caches whatever backward needs;
// backward(gy) accumulates parameter gradients and returns the input
// gradient. One in-flight forward per layer instance.

// y = x * W^T + b.  x: (B, in), W: (out, in)
class Linear {
public:
    Linear(std::string name, int64_t in, int64_t out, bool bias = true);

    Tensor forward(const Tensor& x);
    Tensor backward(const Tensor& gy);

    void init(Rng& rng);          // kaiming weights, zero bias
    void init_zero();             // zero injection entry point
    void init_identity();

    ParamRefs params();
    int64_t in_dim() const { return in_; }
    int64_t out_dim() const { return out_; }
    Parameter& weight() { return w_; }
    Parameter& bias() { return b_; }

private:
    int64_t in_, out_;
    bool has_bias_;
    Parameter w_, b_;
    Tensor x_cache_;
};

class ReLU {
public:
    Tensor forward(const Tensor& x);
    Tensor backward(const Tensor& gy);

private:
    Tensor x_cache_;
};

// 2-D convolution over a single (C, H, W) image via im2col + GEMM.
class Conv2d {
public:
    Conv2d(std::string name, int64_t in_ch, int64_t out_ch, int kernel, int stride,
           int pad);

    Tensor forward(const Tensor& x);   // (C,H,W) -> (OC,Ho,Wo)
    Tensor backward(const Tensor& gy);

    void init(Rng& rng);
    ParamRefs params();
    Parameter& weight() { return w_; }
    Parameter& bias() { return b_; }
    int64_t in_channels() const { return in_ch_; }
    int64_t out_channels() const { return out_ch_; }
    int kernel() const { return kernel_; }
    int stride() const { return stride_; }
    int pad() const { return pad_; }

private:
    int64_t in_ch_, out_ch_;
    int kernel_, stride_, pad_;
    Parameter w_; // (OC, C*K*K)
    Parameter b_; // (OC)
    Tensor col_cache_;
    std::vector<int64_t> x_shape_cache_;
};

// (C, H, W) -> (C) mean over the spatial plane.
class GlobalAvgPool {
public:
    Tensor forward(const Tensor& x);
    Tensor backward(const Tensor& gy);

private:
    std::vector<int64_t> x_shape_cache_;
};

// Stack of Linear layers with ReLU between them (none after the last).
class Mlp {
public:
    Mlp(std::string name, std::vector<int64_t> dims);

    Tensor forward(const Tensor& x);
    Tensor backward(const Tensor& gy);

    void init(Rng& rng);
    void init_last_zero();
    ParamRefs params();
    size_t num_layers() const { return linears_.size(); }
    Linear& layer(size_t i) { return linears_[i]; }

private:
    std::vector<Linear> linears_;
    std::vector<ReLU> relus_;
};

// sigmoid with numerically safe tails
double sigmoid(double x);

} // namespace gvn::nn
