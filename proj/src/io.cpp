#include "simptheta/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simptheta/errors.hpp"

namespace simptheta::io {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

json face_list(const std::vector<Face>& faces) {
  json a = json::array();
  for (const Face& f : faces) a.push_back(f);
  return a;
}

json signs_json(const std::map<Face, int>& signs) {
  json o = json::object();
  for (const auto& [f, s] : signs) o[face_label(f)] = s;
  return o;
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(fmt12(v).c_str(), nullptr);
}

Complex complex_from_json(const json& j) {
  try {
    if (!j.is_object()) throw InputError("complex JSON must be an object");
    for (const char* key : {"n", "k", "k_faces"})
      if (!j.contains(key)) throw InputError(std::string("complex JSON lacks \"") + key + "\"");
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    std::vector<Face> faces;
    for (const json& f : j.at("k_faces")) faces.push_back(f.get<Face>());
    return Complex(n, k, std::move(faces));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed complex JSON: ") + e.what());
  }
}

json complex_to_json(const Complex& x) {
  return {{"n", x.n()}, {"k", x.k()}, {"k_faces", face_list(x.top_faces().faces())}};
}

Complex read_complex(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("cannot parse complex JSON: ") + e.what());
  }
  return complex_from_json(j);
}

Complex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_complex(in);
}

void save_complex(const std::string& path, const Complex& x) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << complex_to_json(x).dump() << '\n';
}

void write_matrix_csv(std::ostream& out, const FaceIndex& labels, const Eigen::MatrixXd& m) {
  if (m.rows() != labels.size() || m.cols() != labels.size())
    throw DimensionMismatch("matrix does not match its labels");
  out << "face";
  for (const Face& f : labels) out << ',' << face_label(f);
  out << '\n';
  for (int i = 0; i < labels.size(); ++i) {
    out << face_label(labels[i]);
    for (int j = 0; j < labels.size(); ++j) out << ',' << fmt12(m(i, j) == 0.0 ? 0.0 : m(i, j));
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(std::istream& in, const FaceIndex& expected) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty matrix CSV");
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "face") throw InputError("matrix CSV header must start with 'face'");
  if (static_cast<int>(header.size()) - 1 != expected.size())
    throw DimensionMismatch("matrix CSV has " + std::to_string(header.size() - 1) +
                            " columns, expected " + std::to_string(expected.size()));
  for (int j = 0; j < expected.size(); ++j)
    if (parse_face_label(header[j + 1]) != expected[j])
      throw InputError("column " + std::to_string(j) + " is labeled " + header[j + 1] + ", expected " +
                       face_label(expected[j]));
  Eigen::MatrixXd m(expected.size(), expected.size());
  for (int i = 0; i < expected.size(); ++i) {
    if (!std::getline(in, line)) throw DimensionMismatch("matrix CSV ends after " + std::to_string(i) + " rows");
    const auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != expected.size() + 1)
      throw DimensionMismatch("row " + std::to_string(i) + " has " + std::to_string(cells.size()) + " cells");
    if (parse_face_label(cells[0]) != expected[i])
      throw InputError("row " + std::to_string(i) + " is labeled " + cells[0] + ", expected " +
                       face_label(expected[i]));
    for (int j = 0; j < expected.size(); ++j) {
      char* end = nullptr;
      m(i, j) = std::strtod(cells[j + 1].c_str(), &end);
      if (end == cells[j + 1].c_str() || *end != '\0')
        throw InputError("bad number '" + cells[j + 1] + "' in row " + std::to_string(i));
    }
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \r\t") != std::string::npos) throw DimensionMismatch("matrix CSV has extra rows");
  return m;
}

Eigen::MatrixXd load_matrix_csv(const std::string& path, const FaceIndex& expected) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_matrix_csv(in, expected);
}

json solve_report_json(const sdp::SolveReport& r) {
  return {{"value", round12(r.value)},
          {"dual_value", round12(r.dual_value)},
          {"status", sdp::to_string(r.status)},
          {"iterations", r.iterations},
          {"constraints", r.constraints_used},
          {"residuals",
           {{"primal", round12(r.primal_residual)},
            {"dual", round12(r.dual_residual)},
            {"min_eigenvalue", round12(r.min_eigenvalue)}}}};
}

json theta_json(const Complex& x, const ThetaResult& r) {
  json j = solve_report_json(r.report);
  j["complex"] = complex_to_json(x);
  j["level"] = r.level;
  j["hat"] = r.hat;
  j["value"] = round12(r.value);
  j["upper_bracket"] = round12(r.upper_bracket);
  return j;
}

json homomorphism_json(const Homomorphism& h) {
  json f = json::object(), a = json::object();
  for (const auto& [from, to] : h.f) f[face_label(from)] = face_label(to);
  for (const auto& [from, to] : h.assignment) a[face_label(from)] = face_label(to);
  return {{"map", f},
          {"assignment", a},
          {"source_orientation", signs_json(h.source_signs)},
          {"target_orientation", signs_json(h.target_signs)}};
}

json summary_json(const std::vector<CellSummary>& cells) {
  json out = json::array();
  for (const CellSummary& c : cells)
    out.push_back({{"kind", to_string(c.kind)},
                   {"n", c.n},
                   {"k_or_ell", c.k_or_ell},
                   {"p", round12(c.p)},
                   {"samples", c.samples},
                   {"median_ratio", round12(c.median_ratio)},
                   {"q1_ratio", round12(c.q1_ratio)},
                   {"q3_ratio", round12(c.q3_ratio)},
                   {"median_value", round12(c.median_value)}});
  return out;
}

}  // namespace simptheta::io
