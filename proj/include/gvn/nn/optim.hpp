#pragma once

#include "gvn/nn/tensor.hpp"

namespace gvn::nn {

// Adam with decoupled weight decay. Moment buffers live on the parameters;
// the step counter lives here, so one optimizer instance per parameter group.
class Adam {
public:
    Adam(ParamRefs params, double lr, double weight_decay = 0.0,
         double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

    void step();
    void zero_grad();
    void set_lr(double lr) { lr_ = lr; }
    double lr() const { return lr_; }
    const ParamRefs& params() const { return params_; }

private:
    ParamRefs params_;
    double lr_, weight_decay_, beta1_, beta2_, eps_;
    int64_t t_ = 0;
};

} // namespace gvn::nn
