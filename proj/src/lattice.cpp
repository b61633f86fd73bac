#include "erw/lattice.hpp"

namespace erw {

double transition_probability(const ModelParams& params, const LatticeVector& from,
                              const LatticeVector& to, bool excited) {
    if (from.dim() != params.d || to.dim() != params.d)
        throw std::domain_error("transition_probability: dimension mismatch");
    LatticeVector step = to - from;
    if (step.l1() != 1)
        throw std::domain_error("transition_probability: sites are not nearest neighbours");
    return kernel_value<double>(params.d, params.beta, step.c[0], excited);
}

bool WalkPath::is_fresh_at_end() const {
    auto it = counts_.find(sites_.back());
    return it->second == 1;
}

WalkPath WalkPath::extend(const LatticeVector& step) const {
    WalkPath out(*this);
    out.push_step(step);
    return out;
}

void WalkPath::push_step(const LatticeVector& step) {
    if (step.l1() != 1) throw std::domain_error("WalkPath: step is not a unit vector");
    push(sites_.back() + step);
}

void WalkPath::pop() {
    auto it = counts_.find(sites_.back());
    if (--it->second == 0) counts_.erase(it);
    sites_.pop_back();
}

}  // namespace erw
