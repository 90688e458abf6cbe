#include "gvn/nn/tensor.hpp"

#include <cmath>

#include "gvn/kernels/kernels.hpp"
#include "gvn/sha256.hpp"

namespace gvn::nn {

Tensor::Tensor(std::vector<int64_t> shape) : shape_(std::move(shape)) {
    int64_t n = 1;
    for (int64_t d : shape_) {
        if (d < 0) throw ArgumentError("negative tensor dimension");
        n *= d;
    }
    data_.assign(size_t(n), 0.0);
}

void Tensor::fill(double v) {
    for (auto& x : data_) x = v;
}

Tensor Tensor::reshaped(std::vector<int64_t> shape) const {
    Tensor t(std::move(shape));
    if (t.numel() != numel())
        throw ArgumentError("reshape element count mismatch: " + shape_str() +
                            " -> " + t.shape_str());
    t.data_ = data_;
    return t;
}

void Tensor::add_(const Tensor& other) {
    if (other.numel() != numel()) throw ArgumentError("tensor add: size mismatch");
    kernels::axpy(1.0, other.data(), data(), size_t(numel()));
}

void Tensor::add_scaled_(const Tensor& other, double a) {
    if (other.numel() != numel()) throw ArgumentError("tensor add: size mismatch");
    kernels::axpy(a, other.data(), data(), size_t(numel()));
}

void Tensor::mul_(double a) { kernels::scale(data(), a, size_t(numel())); }

bool Tensor::all_finite() const {
    for (double x : data_)
        if (!std::isfinite(x)) return false;
    return true;
}

std::string Tensor::shape_str() const {
    std::string s = "(";
    for (size_t i = 0; i < shape_.size(); ++i)
        s += (i ? "," : "") + std::to_string(shape_[i]);
    return s + ")";
}

void Parameter::init_normal(Rng& rng, double stddev) {
    for (int64_t i = 0; i < value.numel(); ++i) value[i] = rng.normal() * stddev;
}

void Parameter::init_kaiming(Rng& rng, int64_t fan_in) {
    const double stddev = std::sqrt(2.0 / double(fan_in > 0 ? fan_in : 1));
    init_normal(rng, stddev);
}

void Parameter::init_identity() {
    if (value.ndim() != 2 || value.dim(0) != value.dim(1))
        throw ArgumentError("identity init requires a square matrix");
    value.zero();
    for (int64_t i = 0; i < value.dim(0); ++i) value.at2(i, i) = 1.0;
}

std::string params_digest(const ParamRefs& params) {
    Sha256 h;
    for (const Parameter* p : params) {
        h.update(p->name);
        h.update(p->value.data(), size_t(p->value.numel()) * sizeof(double));
    }
    return to_hex(h.finish());
}

} // namespace gvn::nn
