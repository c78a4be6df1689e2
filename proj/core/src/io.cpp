#include "rmatrix/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace rmatrix {

namespace {

Eigen::MatrixXd rows_to_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array())
    throw ParseError("expected an array of rows");
  const auto nrows = rows.size();
  const auto ncols = rows.front().size();
  Eigen::MatrixXd m(nrows, ncols);
  for (size_t i = 0; i < nrows; ++i) {
    if (rows[i].size() != ncols) throw ParseError("ragged matrix rows");
    for (size_t j = 0; j < ncols; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

}  // namespace

AlgebraPtr load_algebra(const json& desc, const Tolerances& tol) {
  try {
    const std::string name = desc.at("name").get<std::string>();
    const int m = desc.at("matrix_size").get<int>();
    if (m < 1) throw ParseError("matrix_size must be positive");
    std::vector<Eigen::MatrixXd> basis;
    for (const auto& flat : desc.at("basis")) {
      if (flat.size() != static_cast<size_t>(m) * m)
        throw ParseError("basis matrix has wrong length for matrix_size");
      Eigen::MatrixXd b(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = flat[i * m + j].get<double>();
      basis.push_back(std::move(b));
    }
    return LieAlgebra::build(name, std::move(basis), tol);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad algebra description: ") + e.what());
  }
}

AlgebraPtr load_algebra_file(const std::string& path, const Tolerances& tol) {
  return load_algebra(read_json_file(path), tol);
}

REndomorphism load_r_endomorphism(const json& desc, const AlgebraPtr& algebra,
                                  const Tolerances& tol) {
  try {
    const std::string kind = desc.at("kind").get<std::string>();
    if (kind == "split") {
      return r_from_split(algebra, desc.at("g_plus").get<std::vector<int>>(),
                          desc.at("g_minus").get<std::vector<int>>(), tol);
    }
    if (kind == "matrix") {
      return REndomorphism(algebra, rows_to_matrix(desc.at("entries")));
    }
    throw ParseError("unknown r-matrix kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad r-matrix description: ") + e.what());
  }
}

REndomorphism load_r_endomorphism_file(const std::string& path, const AlgebraPtr& algebra,
                                       const Tolerances& tol) {
  return load_r_endomorphism(read_json_file(path), algebra, tol);
}

TensorR load_tensor_r(const json& desc, const AlgebraPtr& algebra) {
  try {
    if (desc.at("kind").get<std::string>() != "tensor")
      throw ParseError("expected kind 'tensor'");
    return TensorR(algebra, rows_to_matrix(desc.at("coeffs")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad tensor description: ") + e.what());
  }
}

TensorR load_tensor_r_file(const std::string& path, const AlgebraPtr& algebra) {
  return load_tensor_r(read_json_file(path), algebra);
}

Eigen::MatrixXd load_matrix(const json& desc) {
  if (desc.is_array()) return rows_to_matrix(desc);
  if (desc.contains("entries")) return rows_to_matrix(desc["entries"]);
  throw ParseError("expected a matrix ('entries' or a bare array of rows)");
}

Eigen::MatrixXd load_matrix_file(const std::string& path) {
  return load_matrix(read_json_file(path));
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace rmatrix
