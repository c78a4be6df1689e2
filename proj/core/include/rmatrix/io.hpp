#ifndef RMATRIX_IO_HPP
#define RMATRIX_IO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "rmatrix/bialgebra.hpp"
#include "rmatrix/dialgebra.hpp"
#include "rmatrix/liealg.hpp"

namespace rmatrix {

using json = nlohmann::json;

/// Algebra description: { "name": str, "matrix_size": int,
/// "basis": [[row-major reals]] }. Validates closure on load.
AlgebraPtr load_algebra(const json& desc, const Tolerances& tol = {});
AlgebraPtr load_algebra_file(const std::string& path, const Tolerances& tol = {});

/// R-endomorphism description: { "kind": "split", "g_plus": [...],
/// "g_minus": [...] } or { "kind": "matrix", "entries": [[...]] }.
REndomorphism load_r_endomorphism(const json& desc, const AlgebraPtr& algebra,
                                  const Tolerances& tol = {});
REndomorphism load_r_endomorphism_file(const std::string& path, const AlgebraPtr& algebra,
                                       const Tolerances& tol = {});

/// Tensor r-matrix description: { "kind": "tensor", "coeffs": [[...]] }.
TensorR load_tensor_r(const json& desc, const AlgebraPtr& algebra);
TensorR load_tensor_r_file(const std::string& path, const AlgebraPtr& algebra);

/// Plain matrix: { "entries": [[...]] } or a bare array of rows.
Eigen::MatrixXd load_matrix(const json& desc);
Eigen::MatrixXd load_matrix_file(const std::string& path);

json matrix_to_json(const Eigen::MatrixXd& m);
json vector_to_json(const Eigen::VectorXd& v);

json read_json_file(const std::string& path);

/// Writes through a temporary file and renames into place.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace rmatrix

#endif
