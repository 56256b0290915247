#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "simptheta/combinatorics.hpp"
#include "simptheta/complex.hpp"
#include "simptheta/random_lab.hpp"
#include "simptheta/theta.hpp"

namespace simptheta::io {

using nlohmann::json;

// Rounds to 12 significant digits so that dumps are stable across platforms.
double round12(double v);

// {"n": int, "k": int, "k_faces": [[int, ...], ...]}; faces are canonicalized.
Complex complex_from_json(const json& j);
json complex_to_json(const Complex& x);
Complex read_complex(std::istream& in);
Complex load_complex(const std::string& path);
void save_complex(const std::string& path, const Complex& x);

// Dense matrix CSV: header "face,<label>,...", then one "<label>,v,..." row
// per face.
void write_matrix_csv(std::ostream& out, const FaceIndex& labels, const Eigen::MatrixXd& m);
// Reads a matrix written by write_matrix_csv; labels must match `expected`
// in order. Throws InputError / DimensionMismatch otherwise.
Eigen::MatrixXd read_matrix_csv(std::istream& in, const FaceIndex& expected);
Eigen::MatrixXd load_matrix_csv(const std::string& path, const FaceIndex& expected);

json solve_report_json(const sdp::SolveReport& r);
json theta_json(const Complex& x, const ThetaResult& r);
json homomorphism_json(const Homomorphism& h);
json summary_json(const std::vector<CellSummary>& cells);

}  // namespace simptheta::io
