#include "cheshire/tsvf.hpp"

#include <cmath>

#include "cheshire/errors.hpp"
#include "cheshire/observables.hpp"

namespace cheshire {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// (|up1 down2> + sign |down1 up2>) (x) |p1 p2>, unnormalized
StateVector spin_pair(double sign, Path p1, Path p2) {
    return basis_ket(Spin::up, Spin::down, p1, p2) +
           sign * basis_ket(Spin::down, Spin::up, p1, p2);
}

}  // namespace

std::string to_string(PostState post) {
    return post == PostState::exchange ? "exchange" : "identity";
}

StateVector preselect(double alpha) {
    const StateVector singlet_ud = spin_pair(-1.0, Path::u, Path::d);
    const StateVector singlet_du = spin_pair(-1.0, Path::d, Path::u);
    return kInvSqrt2 * (std::sin(alpha) * singlet_ud + std::cos(alpha) * singlet_du);
}

StateVector post_exchange() {
    return 0.5 * spin_pair(+1.0, Path::u, Path::d) + 0.5 * spin_pair(-1.0, Path::d, Path::u);
}

StateVector post_identity() {
    return basis_ket(Spin::up, Spin::down, Path::d, Path::u);
}

StateVector post_state(PostState post) {
    return post == PostState::exchange ? post_exchange() : post_identity();
}

Selection::Selection(StateVector pre, StateVector post)
    : pre_(std::move(pre)), post_(std::move(post)) {
    if (std::abs(norm(pre_) - 1.0) > kNormTol || std::abs(norm(post_) - 1.0) > kNormTol) {
        throw DomainError("pre- and post-selected states must be normalized");
    }
    overlap_ = inner(post_, pre_);
    n0_ = std::norm(overlap_);
}

void Selection::require_weak_values() const {
    if (!admits_weak_values()) {
        throw OrthogonalSelection("post-selection probability " + std::to_string(n0_) +
                                  " is below the weak-value threshold");
    }
}

WeakValue weak_value(const Operator& op, const Selection& sel) {
    sel.require_weak_values();
    const Complex numerator = inner(sel.post(), act(op, sel.pre()));
    return WeakValue{numerator / sel.overlap(), op.label()};
}

std::vector<WeakValue> weak_value_table(const Selection& sel) {
    sel.require_weak_values();
    std::vector<WeakValue> out;
    for (const auto& op : canonical_observables()) {
        out.push_back(weak_value(op, sel));
    }
    return out;
}

}  // namespace cheshire
