#include "cheshire/observables.hpp"

#include <algorithm>

#include "cheshire/errors.hpp"

namespace cheshire {
namespace {

const Matrix2 kId2 = Matrix2::Identity();

Matrix2 ket_bra(int bit) {
    Matrix2 m = Matrix2::Zero();
    m(bit, bit) = 1.0;
    return m;
}

std::string particle_digit(Particle k) {
    return k == Particle::one ? "1" : "2";
}

std::string path_letter(Path b) {
    return b == Path::u ? "u" : "d";
}

}  // namespace

Operator path_projector(Particle k, Path b) {
    const Matrix2 proj = ket_bra(static_cast<int>(b));
    const std::string label = "Pi_" + path_letter(b) + particle_digit(k);
    return k == Particle::one ? tensor4(kId2, kId2, proj, kId2, label)
                              : tensor4(kId2, kId2, kId2, proj, label);
}

Operator spin_z(Particle k) {
    Matrix2 sz = Matrix2::Zero();
    sz(0, 0) = 0.5;
    sz(1, 1) = -0.5;
    const std::string label = "S" + particle_digit(k);
    return k == Particle::one ? tensor4(sz, kId2, kId2, kId2, label)
                              : tensor4(kId2, sz, kId2, kId2, label);
}

Operator path_spin(Particle k, Path b) {
    return path_projector(k, b) * spin_z(k);
}

std::vector<Operator> canonical_observables() {
    return {
        path_projector(Particle::one, Path::u), path_projector(Particle::two, Path::u),
        path_projector(Particle::one, Path::d), path_projector(Particle::two, Path::d),
        path_spin(Particle::one, Path::u),      path_spin(Particle::two, Path::u),
        path_spin(Particle::one, Path::d),      path_spin(Particle::two, Path::d),
    };
}

const std::vector<std::string>& canonical_labels() {
    static const std::vector<std::string> labels = [] {
        std::vector<std::string> out;
        for (const auto& op : canonical_observables()) {
            out.push_back(op.label());
        }
        return out;
    }();
    return labels;
}

Operator observable_by_label(std::string_view label) {
    for (auto& op : canonical_observables()) {
        if (op.label() == label) {
            return op;
        }
    }
    throw DomainError("unknown observable '" + std::string(label) + "'");
}

std::string label_slug(std::string_view label) {
    std::string out(label);
    std::replace(out.begin(), out.end(), '*', '_');
    return out;
}

}  // namespace cheshire
