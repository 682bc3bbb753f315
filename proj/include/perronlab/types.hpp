#pragma once

// Core value types shared by every perronlab module: the coordinate space
// model, lattice vectors and dense operators on it.

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace perronlab {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input files, flags or JSON documents.
class ParseError : public Error {
public:
    using Error::Error;
};

enum class NormTag { SupNorm, OneNorm };

const char* to_string(NormTag tag);
NormTag norm_tag_from_string(const std::string& s);

// Finite coordinate lattice. SupNorm models C(K), OneNorm models l^1.
class SpaceModel {
public:
    SpaceModel(std::size_t dimension, NormTag norm,
               std::vector<std::string> labels = {});

    std::size_t dimension() const { return dim_; }
    NormTag norm() const { return norm_; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }

    // Same dimension and norm; labels are presentation only.
    bool compatible(const SpaceModel& other) const {
        return dim_ == other.dim_ && norm_ == other.norm_;
    }

private:
    std::size_t dim_;
    NormTag norm_;
    std::vector<std::string> labels_;
};

class LatticeVector {
public:
    LatticeVector(CVector entries, SpaceModel model);

    // Convenience for real data; the model defaults to SupNorm.
    static LatticeVector real(const std::vector<double>& values,
                              NormTag norm = NormTag::SupNorm);
    static LatticeVector complex(const std::vector<cplx>& values,
                                 NormTag norm = NormTag::SupNorm);
    static LatticeVector zeros(const SpaceModel& model);
    static LatticeVector ones(const SpaceModel& model);

    const CVector& entries() const { return entries_; }
    const SpaceModel& model() const { return model_; }
    std::size_t size() const { return static_cast<std::size_t>(entries_.size()); }
    cplx operator[](std::size_t i) const { return entries_(static_cast<Eigen::Index>(i)); }

    double norm() const;
    bool is_zero() const;
    bool is_real(double tol = 0.0) const;
    RVector real_part() const { return entries_.real(); }

private:
    CVector entries_;
    SpaceModel model_;
};

class OperatorMatrix {
public:
    OperatorMatrix(CMatrix entries, SpaceModel model);

    static OperatorMatrix real(const RMatrix& entries,
                               NormTag norm = NormTag::SupNorm);
    static OperatorMatrix identity(const SpaceModel& model);

    const CMatrix& entries() const { return entries_; }
    const SpaceModel& model() const { return model_; }
    std::size_t dimension() const { return model_.dimension(); }

    OperatorMatrix with_entries(CMatrix entries) const {
        return OperatorMatrix(std::move(entries), model_);
    }

private:
    CMatrix entries_;
    SpaceModel model_;
};

// Operator plus linear constraint rows C f = 0 that cut a closed subspace
// (continuity at an added infinity node, vanishing at infinity, ...) out of
// the truncated coordinate space.  Eigenspaces are intersected with ker C.
struct ConstrainedOperator {
    OperatorMatrix op;
    CMatrix constraints;  // k x n, k may be 0

    explicit ConstrainedOperator(OperatorMatrix t)
        : op(std::move(t)), constraints(0, static_cast<Eigen::Index>(op.dimension())) {}
    ConstrainedOperator(OperatorMatrix t, CMatrix c);

    bool has_constraints() const { return constraints.rows() > 0; }
};

}  // namespace perronlab
