#include "perronlab/types.hpp"

#include <algorithm>
#include <set>

namespace perronlab {

const char* to_string(NormTag tag) {
    return tag == NormTag::SupNorm ? "sup" : "one";
}

NormTag norm_tag_from_string(const std::string& s) {
    if (s == "sup") return NormTag::SupNorm;
    if (s == "one") return NormTag::OneNorm;
    throw ParseError("unknown norm tag '" + s + "' (expected \"sup\" or \"one\")");
}

SpaceModel::SpaceModel(std::size_t dimension, NormTag norm,
                       std::vector<std::string> labels)
    : dim_(dimension), norm_(norm), labels_(std::move(labels)) {
    if (dim_ < 1) throw Error("space model dimension must be >= 1");
    if (!labels_.empty()) {
        if (labels_.size() != dim_)
            throw Error("index_labels length must equal dimension");
        std::set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size())
            throw Error("index_labels must be distinct");
    }
}

LatticeVector::LatticeVector(CVector entries, SpaceModel model)
    : entries_(std::move(entries)), model_(std::move(model)) {
    if (static_cast<std::size_t>(entries_.size()) != model_.dimension())
        throw Error("vector length does not match model dimension");
}

LatticeVector LatticeVector::real(const std::vector<double>& values, NormTag norm) {
    CVector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
    return LatticeVector(std::move(v), SpaceModel(values.size(), norm));
}

LatticeVector LatticeVector::complex(const std::vector<cplx>& values, NormTag norm) {
    CVector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
    return LatticeVector(std::move(v), SpaceModel(values.size(), norm));
}

LatticeVector LatticeVector::zeros(const SpaceModel& model) {
    return LatticeVector(CVector::Zero(static_cast<Eigen::Index>(model.dimension())), model);
}

LatticeVector LatticeVector::ones(const SpaceModel& model) {
    return LatticeVector(CVector::Ones(static_cast<Eigen::Index>(model.dimension())), model);
}

double LatticeVector::norm() const {
    if (model_.norm() == NormTag::SupNorm) return entries_.cwiseAbs().maxCoeff();
    return entries_.cwiseAbs().sum();
}

bool LatticeVector::is_zero() const {
    return (entries_.array() == cplx(0.0)).all();
}

bool LatticeVector::is_real(double tol) const {
    return entries_.imag().cwiseAbs().maxCoeff() <= tol;
}

OperatorMatrix::OperatorMatrix(CMatrix entries, SpaceModel model)
    : entries_(std::move(entries)), model_(std::move(model)) {
    const auto n = static_cast<Eigen::Index>(model_.dimension());
    if (entries_.rows() != n || entries_.cols() != n)
        throw Error("operator matrix must be n x n with n = model dimension");
}

OperatorMatrix OperatorMatrix::real(const RMatrix& entries, NormTag norm) {
    if (entries.rows() != entries.cols()) throw Error("operator matrix must be square");
    return OperatorMatrix(entries.cast<cplx>(),
                          SpaceModel(static_cast<std::size_t>(entries.rows()), norm));
}

OperatorMatrix OperatorMatrix::identity(const SpaceModel& model) {
    const auto n = static_cast<Eigen::Index>(model.dimension());
    return OperatorMatrix(CMatrix::Identity(n, n), model);
}

ConstrainedOperator::ConstrainedOperator(OperatorMatrix t, CMatrix c)
    : op(std::move(t)), constraints(std::move(c)) {
    if (constraints.rows() > 0 &&
        constraints.cols() != static_cast<Eigen::Index>(op.dimension()))
        throw Error("constraint rows must have one column per coordinate");
    if (constraints.rows() == 0)
        constraints.resize(0, static_cast<Eigen::Index>(op.dimension()));
}

}  // namespace perronlab
