#include "gvn/nn/layers.hpp"

#include <cmath>

#include "gvn/kernels/kernels.hpp"

namespace gvn::nn {

double sigmoid(double x) {
    if (x >= 0) {
        const double z = std::exp(-x);
        return 1.0 / (1.0 + z);
    }
    const double z = std::exp(x);
    return z / (1.0 + z);
}

// ---- Linear -------------------------------------------------------------

Linear::Linear(std::string name, int64_t in, int64_t out, bool bias)
    : in_(in), out_(out), has_bias_(bias),
      w_(name + ".w", {out, in}),
      b_(name + ".b", {bias ? out : 0}) {
    if (in < 0 || out <= 0) throw ArgumentError("linear dims must be positive");
}

void Linear::init(Rng& rng) {
    w_.init_kaiming(rng, in_);
    if (has_bias_) b_.value.zero();
}

void Linear::init_zero() {
    w_.value.zero();
    if (has_bias_) b_.value.zero();
}

void Linear::init_identity() { w_.init_identity(); }

Tensor Linear::forward(const Tensor& x) {
    if (x.ndim() != 2 || x.dim(1) != in_)
        throw ArgumentError("linear " + w_.name + ": input " + x.shape_str() +
                            " incompatible with in=" + std::to_string(in_));
    x_cache_ = x;
    const int64_t batch = x.dim(0);
    Tensor y({batch, out_});
    if (in_ > 0)
        kernels::gemm_nt(int(batch), int(out_), int(in_), 1.0, x.data(),
                         w_.value.data(), 0.0, y.data());
    if (has_bias_)
        kernels::add_bias_rows(y.data(), b_.value.data(), int(batch), int(out_));
    return y;
}

Tensor Linear::backward(const Tensor& gy) {
    const int64_t batch = x_cache_.dim(0);
    if (gy.ndim() != 2 || gy.dim(0) != batch || gy.dim(1) != out_)
        throw ArgumentError("linear backward: bad gradient shape");
    if (in_ > 0)
        kernels::gemm_tn(int(out_), int(in_), int(batch), 1.0, gy.data(),
                         x_cache_.data(), 1.0, w_.grad.data());
    if (has_bias_) {
        for (int64_t r = 0; r < batch; ++r)
            kernels::axpy(1.0, gy.data() + r * out_, b_.grad.data(), size_t(out_));
    }
    Tensor gx({batch, in_});
    if (in_ > 0)
        kernels::gemm_nn(int(batch), int(in_), int(out_), 1.0, gy.data(),
                         w_.value.data(), 0.0, gx.data());
    return gx;
}

ParamRefs Linear::params() {
    ParamRefs p{&w_};
    if (has_bias_) p.push_back(&b_);
    return p;
}

// ---- ReLU ---------------------------------------------------------------

Tensor ReLU::forward(const Tensor& x) {
    x_cache_ = x;
    Tensor y = Tensor::zeros_like(x);
    kernels::relu_fwd(x.data(), y.data(), size_t(x.numel()));
    return y;
}

Tensor ReLU::backward(const Tensor& gy) {
    Tensor gx = Tensor::zeros_like(x_cache_);
    kernels::relu_bwd(x_cache_.data(), gy.data(), gx.data(), size_t(gx.numel()));
    return gx;
}

// ---- Conv2d -------------------------------------------------------------

Conv2d::Conv2d(std::string name, int64_t in_ch, int64_t out_ch, int kernel,
               int stride, int pad)
    : in_ch_(in_ch), out_ch_(out_ch), kernel_(kernel), stride_(stride), pad_(pad),
      w_(name + ".w", {out_ch, in_ch * kernel * kernel}),
      b_(name + ".b", {out_ch}) {
    if (in_ch <= 0 || out_ch <= 0 || kernel <= 0 || stride <= 0 || pad < 0)
        throw ArgumentError("conv2d: bad geometry");
}

void Conv2d::init(Rng& rng) {
    w_.init_kaiming(rng, in_ch_ * kernel_ * kernel_);
    b_.value.zero();
}

namespace {

inline int conv_out(int in, int kernel, int stride, int pad) {
    return (in + 2 * pad - kernel) / stride + 1;
}

void im2col(const double* x, int c, int h, int w, int kernel, int stride, int pad,
            double* col, int ho, int wo) {
    // col is (c*kernel*kernel) x (ho*wo)
    const int plane = ho * wo;
    for (int ch = 0; ch < c; ++ch) {
        const double* src = x + size_t(ch) * h * w;
        for (int ky = 0; ky < kernel; ++ky) {
            for (int kx = 0; kx < kernel; ++kx) {
                double* dst = col + (size_t(ch) * kernel * kernel + size_t(ky) * kernel + kx) * plane;
                for (int oy = 0; oy < ho; ++oy) {
                    const int iy = oy * stride - pad + ky;
                    if (iy < 0 || iy >= h) {
                        for (int ox = 0; ox < wo; ++ox) dst[oy * wo + ox] = 0.0;
                        continue;
                    }
                    const double* srow = src + size_t(iy) * w;
                    for (int ox = 0; ox < wo; ++ox) {
                        const int ix = ox * stride - pad + kx;
                        dst[oy * wo + ox] = (ix < 0 || ix >= w) ? 0.0 : srow[ix];
                    }
                }
            }
        }
    }
}

void col2im(const double* col, int c, int h, int w, int kernel, int stride, int pad,
            double* x, int ho, int wo) {
    const int plane = ho * wo;
    for (int ch = 0; ch < c; ++ch) {
        double* dst = x + size_t(ch) * h * w;
        for (int ky = 0; ky < kernel; ++ky) {
            for (int kx = 0; kx < kernel; ++kx) {
                const double* src = col + (size_t(ch) * kernel * kernel + size_t(ky) * kernel + kx) * plane;
                for (int oy = 0; oy < ho; ++oy) {
                    const int iy = oy * stride - pad + ky;
                    if (iy < 0 || iy >= h) continue;
                    double* drow = dst + size_t(iy) * w;
                    for (int ox = 0; ox < wo; ++ox) {
                        const int ix = ox * stride - pad + kx;
                        if (ix >= 0 && ix < w) drow[ix] += src[oy * wo + ox];
                    }
                }
            }
        }
    }
}

} // namespace

Tensor Conv2d::forward(const Tensor& x) {
    if (x.ndim() != 3 || x.dim(0) != in_ch_)
        throw ArgumentError("conv2d: expected (" + std::to_string(in_ch_) +
                            ",H,W) input, got " + x.shape_str());
    const int h = int(x.dim(1));
    const int w = int(x.dim(2));
    const int ho = conv_out(h, kernel_, stride_, pad_);
    const int wo = conv_out(w, kernel_, stride_, pad_);
    if (ho <= 0 || wo <= 0) throw ArgumentError("conv2d: input smaller than kernel");

    const int64_t k = in_ch_ * kernel_ * kernel_;
    col_cache_ = Tensor({k, int64_t(ho) * wo});
    x_shape_cache_ = {in_ch_, h, w};
    im2col(x.data(), int(in_ch_), h, w, kernel_, stride_, pad_, col_cache_.data(),
           ho, wo);

    Tensor y({out_ch_, ho, wo});
    kernels::gemm_nn(int(out_ch_), ho * wo, int(k), 1.0, w_.value.data(),
                     col_cache_.data(), 0.0, y.data());
    const int plane = ho * wo;
    for (int64_t oc = 0; oc < out_ch_; ++oc) {
        const double bias = b_.value[oc];
        double* dst = y.data() + oc * plane;
        for (int i = 0; i < plane; ++i) dst[i] += bias;
    }
    return y;
}

Tensor Conv2d::backward(const Tensor& gy) {
    const int h = int(x_shape_cache_[1]);
    const int w = int(x_shape_cache_[2]);
    const int ho = int(gy.dim(1));
    const int wo = int(gy.dim(2));
    const int plane = ho * wo;
    const int64_t k = in_ch_ * kernel_ * kernel_;

    // dW += gy (OC x plane) * col^T
    kernels::gemm_nt(int(out_ch_), int(k), plane, 1.0, gy.data(),
                     col_cache_.data(), 1.0, w_.grad.data());
    for (int64_t oc = 0; oc < out_ch_; ++oc) {
        double s = 0.0;
        const double* src = gy.data() + oc * plane;
        for (int i = 0; i < plane; ++i) s += src[i];
        b_.grad[oc] += s;
    }

    // dcol = W^T * gy, then scatter back
    Tensor gcol({k, int64_t(plane)});
    kernels::gemm_tn(int(k), plane, int(out_ch_), 1.0, w_.value.data(), gy.data(),
                     0.0, gcol.data());
    Tensor gx({in_ch_, h, w});
    col2im(gcol.data(), int(in_ch_), h, w, kernel_, stride_, pad_, gx.data(), ho, wo);
    return gx;
}

ParamRefs Conv2d::params() { return {&w_, &b_}; }

// ---- GlobalAvgPool --------------------------------------------------------

Tensor GlobalAvgPool::forward(const Tensor& x) {
    if (x.ndim() != 3) throw ArgumentError("global pool expects (C,H,W)");
    x_shape_cache_ = {x.dim(0), x.dim(1), x.dim(2)};
    const int64_t c = x.dim(0);
    const int64_t plane = x.dim(1) * x.dim(2);
    Tensor y({c});
    for (int64_t ch = 0; ch < c; ++ch) {
        double s = 0.0;
        const double* src = x.data() + ch * plane;
        for (int64_t i = 0; i < plane; ++i) s += src[i];
        y[ch] = s / double(plane);
    }
    return y;
}

Tensor GlobalAvgPool::backward(const Tensor& gy) {
    const int64_t c = x_shape_cache_[0];
    const int64_t plane = x_shape_cache_[1] * x_shape_cache_[2];
    Tensor gx({c, x_shape_cache_[1], x_shape_cache_[2]});
    for (int64_t ch = 0; ch < c; ++ch) {
        const double g = gy[ch] / double(plane);
        double* dst = gx.data() + ch * plane;
        for (int64_t i = 0; i < plane; ++i) dst[i] = g;
    }
    return gx;
}

// ---- Mlp ------------------------------------------------------------------

Mlp::Mlp(std::string name, std::vector<int64_t> dims) {
    if (dims.size() < 2) throw ArgumentError("mlp needs at least input and output dims");
    for (size_t i = 0; i + 1 < dims.size(); ++i)
        linears_.emplace_back(name + ".l" + std::to_string(i), dims[i], dims[i + 1]);
    relus_.resize(linears_.size() - 1);
}

void Mlp::init(Rng& rng) {
    for (auto& l : linears_) l.init(rng);
}

void Mlp::init_last_zero() { linears_.back().init_zero(); }

Tensor Mlp::forward(const Tensor& x) {
    Tensor h = linears_[0].forward(x);
    for (size_t i = 1; i < linears_.size(); ++i) {
        h = relus_[i - 1].forward(h);
        h = linears_[i].forward(h);
    }
    return h;
}

Tensor Mlp::backward(const Tensor& gy) {
    Tensor g = linears_.back().backward(gy);
    for (size_t i = linears_.size() - 1; i-- > 0;) {
        g = relus_[i].backward(g);
        g = linears_[i].backward(g);
    }
    return g;
}

ParamRefs Mlp::params() {
    ParamRefs out;
    for (auto& l : linears_)
        for (auto* p : l.params()) out.push_back(p);
    return out;
}

} // namespace gvn::nn
