#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hllab/exponents.hpp"

namespace hllab {

using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

enum class Dist { Signs, Gaussian };

// Dense order-m coefficient array of an m-linear form, row-major over
// (j_1, ..., j_m): coefficient [j_1, ..., j_m] is the value on the
// corresponding canonical basis vectors. Immutable after construction.
class CoeffTensor {
  public:
    // zero tensor
    CoeffTensor(std::vector<int> dims, Field field);
    CoeffTensor(std::vector<int> dims, Field field, std::vector<Scalar> coeffs);
    static CoeffTensor from_real(std::vector<int> dims, const std::vector<double>& coeffs);

    int order() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
    Field field() const { return field_; }
    std::size_t size() const { return coeffs_.size(); }
    std::span<const Scalar> coeffs() const { return coeffs_; }
    Scalar coeff(std::size_t flat) const { return coeffs_[flat]; }

    std::size_t flat_index(std::span<const int> multi) const;
    bool is_zero() const;

  private:
    std::vector<int> dims_;
    Field field_;
    std::vector<Scalar> coeffs_;
};

// exponents for a nested coefficient norm, outermost mode first, each >= 1
struct MixedExponents {
    std::vector<double> exps;
    explicit MixedExponents(std::vector<double> e);
};

// T(x_1, ..., x_m); linear in every slot
Scalar evaluate(const CoeffTensor& t, std::span<const Vector> xs);

// contraction of one mode against a vector; result has order m-1
CoeffTensor contract_mode(const CoeffTensor& t, int mode, const Vector& x);
CoeffTensor contract_last(const CoeffTensor& t, const Vector& x);

// (sum_J |a_J|^rho)^{1/rho}, rho >= 1; internally rescaled by a power of
// two so values scale exactly under power-of-two scalings of the input
double lp_coeff_norm(const CoeffTensor& t, double rho);

// nested norm: innermost sum over the last mode with the last exponent,
// then successively outward; collapses to lp_coeff_norm when all equal
double mixed_norm(const CoeffTensor& t, const MixedExponents& e);

// Signs: iid uniform +-1 (Real) or uniform fourth roots of unity (Complex).
// Gaussian: iid standard normal per real component. Deterministic in seed.
CoeffTensor random_tensor(std::vector<int> dims, Field field, Dist dist, std::uint64_t seed);

CoeffTensor tensor_product(const CoeffTensor& a, const CoeffTensor& b);

// scaled l_q norm of a sequence of magnitudes; exact under 2^k scaling
double scaled_lq_norm(std::span<const double> mags, double q);

// --- tensor JSON schema -------------------------------------------------
// {"m": int, "dims": [int], "field": "real"|"complex",
//  "coeffs": [num] or [[re, im]]}  (row-major, full double precision)

std::string tensor_to_json(const CoeffTensor& t, int indent = -1);
CoeffTensor tensor_from_json(const std::string& text);
void save_tensor(const CoeffTensor& t, const std::string& path);
CoeffTensor load_tensor(const std::string& path);

// malformed or mismatched tensor files; CLI maps this to the usage exit code
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hllab
