#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace dwtrap {

enum class Spin { up = 0, down = 1 };
enum class WellScope { well1, well2, both };

struct BasisState {
    int well;                   // 1 or 2
    int level;                  // 1..levels_per_well
    std::optional<Spin> spin;   // absent for motional-only bases
};

// Canonical product basis: well-major, level-minor, electronic fastest.
// index = ((well-1)*N + (level-1)) * spin_count + spin
// The stock experiments use N = 2 levels per well (dim 8 with the spin).
class Basis {
public:
    static constexpr int max_levels = 8;

    Basis(int levels_per_well, bool electronic);

    int levels_per_well() const { return levels_; }
    bool has_electronic() const { return electronic_; }
    int size() const { return 2 * levels_ * (electronic_ ? 2 : 1); }

    int index(int well, int level) const;             // motional-only basis
    int index(int well, int level, Spin spin) const;  // spinful basis
    BasisState state(int idx) const;

    bool operator==(const Basis& other) const {
        return levels_ == other.levels_ && electronic_ == other.electronic_;
    }

private:
    int levels_;
    bool electronic_;
};

struct OperatorMatrix {
    Basis basis;
    Eigen::MatrixXcd mat;
    bool hermitian = false;
};

struct StateVector {
    Basis basis;
    Eigen::VectorXcd amps;
};

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

// Unit ket |well, level, spin>.
StateVector basis_ket(const Basis& basis, int well, int level, Spin spin);
StateVector basis_ket(const Basis& basis, int well, int level);

// |well, to_level><well, from_level| acting as identity on the spin factor:
// the c(to)+ c(from) mode-transfer operator of a single well.
OperatorMatrix mode_operator(const Basis& basis, int well, int from_level, int to_level);

// Cross-well generalization |to><from| (x) 1_spin, used for tunneling terms.
OperatorMatrix transfer_operator(const Basis& basis, int to_well, int to_level,
                                 int from_well, int from_level);

// Projector onto the motional states of one well.
OperatorMatrix well_projector(const Basis& basis, int well);

// Pauli ladder/z operators on the electronic factor (identity on motion).
OperatorMatrix sigma_plus(const Basis& basis);
OperatorMatrix sigma_minus(const Basis& basis);
OperatorMatrix sigma_z(const Basis& basis);

// Position operator restricted to the in-scope wells:
//   X = delta_x * sum_l sqrt(l) ( |l+1><l| + |l><l+1| )
// with l the level index starting at 1, i.e. the usual sqrt(n+1) oscillator
// ladder written in 1-based labels.
OperatorMatrix position_operator(const Basis& basis, WellScope scope, double delta_x);

// exp(i eta X / delta_x) through the eigendecomposition of X; exactly
// unitary at any truncation, and correct to first order in eta with the
// leftover error scaling as eta^2.
OperatorMatrix displacement_operator(const Basis& basis, double eta, WellScope scope);

}  // namespace dwtrap
