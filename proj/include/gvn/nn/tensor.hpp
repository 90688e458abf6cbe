#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "gvn/common.hpp"
#include "gvn/rng.hpp"

namespace gvn::nn {

// Dense row-major double tensor. Shapes used here: (rows, cols) matrices,
// (C, H, W) images, flat vectors.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int64_t> shape);
    Tensor(std::initializer_list<int64_t> shape)
        : Tensor(std::vector<int64_t>(shape)) {}

    static Tensor zeros_like(const Tensor& other) { return Tensor(other.shape_); }

    const std::vector<int64_t>& shape() const { return shape_; }
    int64_t dim(size_t i) const { return shape_.at(i); }
    size_t ndim() const { return shape_.size(); }
    int64_t numel() const { return int64_t(data_.size()); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double& operator[](int64_t i) { return data_[size_t(i)]; }
    double operator[](int64_t i) const { return data_[size_t(i)]; }
    double& at2(int64_t r, int64_t c) { return data_[size_t(r * shape_[1] + c)]; }
    double at2(int64_t r, int64_t c) const { return data_[size_t(r * shape_[1] + c)]; }

    void fill(double v);
    void zero() { fill(0.0); }
    Tensor reshaped(std::vector<int64_t> shape) const;

    void add_(const Tensor& other);             // this += other
    void add_scaled_(const Tensor& other, double a);
    void mul_(double a);

    bool all_finite() const;
    std::string shape_str() const;

private:
    std::vector<int64_t> shape_;
    std::vector<double> data_;
};

// Trainable tensor: value, gradient, Adam moment buffers.
struct Parameter {
    std::string name;
    Tensor value;
    Tensor grad;
    Tensor m;
    Tensor v;

    Parameter() = default;
    Parameter(std::string n, std::vector<int64_t> shape)
        : name(std::move(n)), value(shape), grad(shape), m(shape), v(shape) {}

    void zero_grad() { grad.zero(); }

    void init_normal(Rng& rng, double stddev);
    void init_kaiming(Rng& rng, int64_t fan_in);
    void init_identity(); // square matrices only
};

using ParamRefs = std::vector<Parameter*>;

// Digest over parameter values, used by the frozen/finetune contracts.
std::string params_digest(const ParamRefs& params);

} // namespace gvn::nn
