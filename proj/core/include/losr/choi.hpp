#pragma once

#include <functional>

#include "losr/matrix.hpp"

namespace losr {

// Unnormalized Choi operator of a channel E : In -> Out,
//   J = sum_ij E(|i><j|) (x) |i><j|,
// with the OUT factor first. CP <=> J psd; TP <=> Tr_out J = I_in.
struct ChoiOperator {
  CMatrix matrix;  // square, side dim_out * dim_in
  int dim_out = 1;
  int dim_in = 1;

  int side() const { return dim_out * dim_in; }
};

ChoiOperator choi_from_map(
    const std::function<CMatrix(const CMatrix&)>& action, int dim_in,
    int dim_out);
ChoiOperator choi_from_kraus(const std::vector<CMatrix>& kraus);
ChoiOperator choi_identity(int d);
// E(rho) = Tr[rho] * I/d.
ChoiOperator choi_depolarizing(int d);
// E(rho) = sigma for every unit-trace rho.
ChoiOperator choi_prepare(const CMatrix& sigma, int dim_in = 1);
// Classical channel |x><x| -> sum_a k(a|x)|a><a|, dephasing the input.
ChoiOperator choi_classical(const Eigen::MatrixXd& kernel);

// E(rho) = Tr_in[ J (I_out (x) rho^T) ].
CMatrix choi_apply(const ChoiOperator& j, const CMatrix& rho);

// Row-major-vec transfer matrix: K vec(rho) = vec(E(rho)).
CMatrix choi_to_superop(const ChoiOperator& j);
ChoiOperator superop_to_choi(const CMatrix& k, int dim_out, int dim_in);

// Superoperator of E_a (x) E_b on the joint system (a's factors major).
CMatrix superop_tensor(const CMatrix& ka, int a_out, int a_in,
                       const CMatrix& kb, int b_out, int b_in);
// Superoperator of rho -> P rho P^T for a factor permutation P.
CMatrix superop_permutation(const std::vector<int>& dims,
                            const std::vector<int>& perm);

// Choi of E2 after E1 (link product); requires dim_out(j1) == dim_in(j2).
ChoiOperator compose_sequential(const ChoiOperator& j2, const ChoiOperator& j1);
// Choi of Ea (x) Eb with outputs grouped first, then inputs.
ChoiOperator compose_parallel(const ChoiOperator& ja, const ChoiOperator& jb);

bool is_cp(const ChoiOperator& j, double tol = kDefaultTol);
bool is_tp(const ChoiOperator& j, double tol = kDefaultTol);
double cp_defect(const ChoiOperator& j);  // max(0, -min eigenvalue)
double tp_defect(const ChoiOperator& j);  // ||Tr_out J - I_in||_F

ChoiOperator random_cptp(int dim_in, int dim_out, std::mt19937_64& rng);

}  // namespace losr
