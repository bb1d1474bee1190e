#include "dwtrap/hilbert_space.hpp"

#include <cmath>

#include "dwtrap/errors.hpp"

namespace dwtrap {

namespace {
using complexd = std::complex<double>;

void check_well(int well) {
    if (well != 1 && well != 2) throw domain_error("well index must be 1 or 2");
}

bool scope_has(WellScope scope, int well) {
    return scope == WellScope::both || (scope == WellScope::well1 && well == 1) ||
           (scope == WellScope::well2 && well == 2);
}
}  // namespace

Basis::Basis(int levels_per_well, bool electronic)
    : levels_(levels_per_well), electronic_(electronic) {
    if (levels_ < 1 || levels_ > max_levels)
        throw domain_error("levels per well must lie in 1.." + std::to_string(max_levels));
}

int Basis::index(int well, int level) const {
    check_well(well);
    if (level < 1 || level > levels_) throw domain_error("level out of basis range");
    if (electronic_) throw domain_error("spin label required in an electronic basis");
    return (well - 1) * levels_ + (level - 1);
}

int Basis::index(int well, int level, Spin spin) const {
    check_well(well);
    if (level < 1 || level > levels_) throw domain_error("level out of basis range");
    if (!electronic_) throw domain_error("basis has no electronic factor");
    return ((well - 1) * levels_ + (level - 1)) * 2 + static_cast<int>(spin);
}

BasisState Basis::state(int idx) const {
    if (idx < 0 || idx >= size()) throw domain_error("basis index out of range");
    BasisState s;
    if (electronic_) {
        s.spin = static_cast<Spin>(idx % 2);
        idx /= 2;
    }
    s.level = idx % levels_ + 1;
    s.well = idx / levels_ + 1;
    return s;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

StateVector basis_ket(const Basis& basis, int well, int level, Spin spin) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
    v(basis.index(well, level, spin)) = 1.0;
    return {basis, v};
}

StateVector basis_ket(const Basis& basis, int well, int level) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
    v(basis.index(well, level)) = 1.0;
    return {basis, v};
}

OperatorMatrix transfer_operator(const Basis& basis, int to_well, int to_level,
                                 int from_well, int from_level) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    if (basis.has_electronic()) {
        m(basis.index(to_well, to_level, Spin::up),
          basis.index(from_well, from_level, Spin::up)) = 1.0;
        m(basis.index(to_well, to_level, Spin::down),
          basis.index(from_well, from_level, Spin::down)) = 1.0;
    } else {
        m(basis.index(to_well, to_level), basis.index(from_well, from_level)) = 1.0;
    }
    const bool herm = to_well == from_well && to_level == from_level;
    return {basis, m, herm};
}

OperatorMatrix mode_operator(const Basis& basis, int well, int from_level, int to_level) {
    return transfer_operator(basis, well, to_level, well, from_level);
}

OperatorMatrix well_projector(const Basis& basis, int well) {
    check_well(well);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (int i = 0; i < basis.size(); ++i)
        if (basis.state(i).well == well) m(i, i) = 1.0;
    return {basis, m, true};
}

namespace {
OperatorMatrix spin_op(const Basis& basis, Spin row, Spin col) {
    if (!basis.has_electronic())
        throw domain_error("spin operator needs an electronic basis");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (int w = 1; w <= 2; ++w)
        for (int l = 1; l <= basis.levels_per_well(); ++l)
            m(basis.index(w, l, row), basis.index(w, l, col)) = 1.0;
    return {basis, m, row == col};
}
}  // namespace

OperatorMatrix sigma_plus(const Basis& basis) { return spin_op(basis, Spin::up, Spin::down); }
OperatorMatrix sigma_minus(const Basis& basis) { return spin_op(basis, Spin::down, Spin::up); }

OperatorMatrix sigma_z(const Basis& basis) {
    if (!basis.has_electronic())
        throw domain_error("spin operator needs an electronic basis");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (int i = 0; i < basis.size(); ++i)
        m(i, i) = (basis.state(i).spin == Spin::up) ? 1.0 : -1.0;
    return {basis, m, true};
}

OperatorMatrix position_operator(const Basis& basis, WellScope scope, double delta_x) {
    if (!(delta_x > 0.0)) throw domain_error("delta_x must be positive");
    // X = delta_x sum_l sqrt(l) (|l+1><l| + h.c.), the a + a+ ladder in
    // 1-based level labels: the ground<->first coupling has weight 1.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    auto add = [&](int well, int l) {
        const double w = delta_x * std::sqrt(double(l));
        if (basis.has_electronic()) {
            for (Spin s : {Spin::up, Spin::down}) {
                m(basis.index(well, l + 1, s), basis.index(well, l, s)) += w;
                m(basis.index(well, l, s), basis.index(well, l + 1, s)) += w;
            }
        } else {
            m(basis.index(well, l + 1), basis.index(well, l)) += w;
            m(basis.index(well, l), basis.index(well, l + 1)) += w;
        }
    };
    for (int well = 1; well <= 2; ++well)
        if (scope_has(scope, well))
            for (int l = 1; l < basis.levels_per_well(); ++l) add(well, l);
    return {basis, m, true};
}

OperatorMatrix displacement_operator(const Basis& basis, double eta, WellScope scope) {
    if (!(eta >= 0.0 && eta < 1.0)) throw domain_error("eta must lie in [0, 1)");
    // exp(i eta Xtilde) through the spectral decomposition of the hermitian
    // ladder Xtilde = X/delta_x; exactly unitary at any truncation.
    const OperatorMatrix x = position_operator(basis, scope, 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x.mat);
    if (es.info() != Eigen::Success)
        throw numerical_error("eigendecomposition failed in displacement_operator");
    const auto& v = es.eigenvectors();
    Eigen::VectorXcd phases(basis.size());
    for (int i = 0; i < basis.size(); ++i)
        phases(i) = std::exp(complexd(0.0, eta * es.eigenvalues()(i)));
    Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();
    return {basis, u, false};
}

}  // namespace dwtrap
