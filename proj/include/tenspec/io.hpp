#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "tenspec/bounds.hpp"
#include "tenspec/digraph.hpp"
#include "tenspec/errors.hpp"
#include "tenspec/inclusion.hpp"
#include "tenspec/oracle.hpp"
#include "tenspec/scalar.hpp"
#include "tenspec/tensor.hpp"

namespace tenspec {

using AnyTensor = std::variant<Tensor<double>, Tensor<std::complex<double>>>;

namespace detail {

inline std::complex<double> parse_scalar(const nlohmann::json& v, bool& any_complex) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    any_complex = true;
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw validation_error("tensor value must be a number or a [re, im] pair");
}

inline void walk_dense(const nlohmann::json& node, int depth, int order, int dim,
                       std::vector<std::complex<double>>& out, bool& any_complex) {
  if (depth == order) {
    out.push_back(parse_scalar(node, any_complex));
    return;
  }
  if (!node.is_array() || static_cast<int>(node.size()) != dim) {
    throw validation_error("dense entries must nest " + std::to_string(order) +
                           " levels of arrays of length " + std::to_string(dim));
  }
  for (const auto& child : node) walk_dense(child, depth + 1, order, dim, out, any_complex);
}

inline std::vector<double> real_parts(const std::vector<std::complex<double>>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
  return r;
}

}  // namespace detail

/// Parses the interchange format
///   {"order": m, "dim": n, "format": "dense"|"coo", "entries": ...}
/// with 1-based coo indices. The tensor is complex exactly when some value
/// is written as a [re, im] pair.
inline AnyTensor tensor_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("tensor document must be a JSON object");
  for (const char* key : {"order", "dim", "format", "entries"}) {
    if (!j.contains(key)) {
      throw validation_error(std::string("tensor document missing \"") + key + "\"");
    }
  }
  if (!j["order"].is_number_integer() || !j["dim"].is_number_integer()) {
    throw validation_error("order and dim must be integers");
  }
  const int order = j["order"].get<int>();
  const int dim = j["dim"].get<int>();
  if (order < 1) throw validation_error("tensor order must be >= 1");
  if (dim < 1) throw validation_error("tensor dimension must be >= 1");
  const std::string format = j["format"].get<std::string>();
  bool any_complex = false;

  if (format == "dense") {
    std::vector<std::complex<double>> flat;
    detail::walk_dense(j["entries"], 0, order, dim, flat, any_complex);
    if (any_complex) return Tensor<std::complex<double>>::dense(order, dim, std::move(flat));
    return Tensor<double>::dense(order, dim, detail::real_parts(flat));
  }
  if (format == "coo") {
    if (!j["entries"].is_array()) throw validation_error("coo entries must be an array");
    std::vector<std::uint32_t> indices;
    std::vector<std::complex<double>> values;
    for (const auto& e : j["entries"]) {
      if (!e.is_object() || !e.contains("idx") || !e.contains("val")) {
        throw validation_error("each coo entry needs \"idx\" and \"val\"");
      }
      const auto& idx = e["idx"];
      if (!idx.is_array() || static_cast<int>(idx.size()) != order) {
        throw validation_error("coo idx must list " + std::to_string(order) + " indices");
      }
      for (const auto& d : idx) {
        if (!d.is_number_integer()) throw validation_error("coo indices must be integers");
        const long long v = d.get<long long>();
        if (v < 1 || v > dim) {
          throw validation_error("index out of range: component " + std::to_string(v) +
                                 " with dim " + std::to_string(dim));
        }
        indices.push_back(static_cast<std::uint32_t>(v - 1));
      }
      values.push_back(detail::parse_scalar(e["val"], any_complex));
    }
    if (any_complex) {
      return Tensor<std::complex<double>>::sparse(order, dim, std::move(indices),
                                                  std::move(values));
    }
    return Tensor<double>::sparse(order, dim, std::move(indices), detail::real_parts(values));
  }
  throw validation_error("format must be \"dense\" or \"coo\"");
}

inline AnyTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open tensor file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("JSON parse error in " + path + ": " + e.what());
  }
  return tensor_from_json(j);
}

namespace detail {

inline nlohmann::json scalar_to_json(double v) { return v; }
inline nlohmann::json scalar_to_json(std::complex<double> v) {
  return nlohmann::json::array({v.real(), v.imag()});
}

}  // namespace detail

template <class Scalar>
nlohmann::json tensor_to_json(const Tensor<Scalar>& t) {
  nlohmann::json j;
  j["order"] = t.order();
  j["dim"] = t.dim();
  if (t.is_dense()) {
    j["format"] = "dense";
    const auto& flat = t.dense_values();
    // fold the flat array into nested rows, innermost first
    std::vector<nlohmann::json> level;
    level.reserve(flat.size());
    for (const Scalar& v : flat) level.push_back(detail::scalar_to_json(v));
    for (int d = 1; d < t.order(); ++d) {
      std::vector<nlohmann::json> next;
      next.reserve(level.size() / static_cast<std::size_t>(t.dim()));
      for (std::size_t i = 0; i < level.size(); i += static_cast<std::size_t>(t.dim())) {
        next.emplace_back(nlohmann::json::array());
        for (int c = 0; c < t.dim(); ++c) next.back().push_back(std::move(level[i + c]));
      }
      level = std::move(next);
    }
    j["entries"] = nlohmann::json::array();
    for (auto& row : level) j["entries"].push_back(std::move(row));
  } else {
    j["format"] = "coo";
    j["entries"] = nlohmann::json::array();
    const auto& idx = t.sparse_indices();
    const auto& val = t.sparse_values();
    const std::size_t m = static_cast<std::size_t>(t.order());
    for (std::size_t r = 0; r < val.size(); ++r) {
      nlohmann::json e;
      e["idx"] = nlohmann::json::array();
      for (std::size_t p = 0; p < m; ++p) e["idx"].push_back(idx[r * m + p] + 1);
      e["val"] = detail::scalar_to_json(val[r]);
      j["entries"].push_back(std::move(e));
    }
  }
  return j;
}

inline nlohmann::json tensor_to_json(const AnyTensor& t) {
  return std::visit([](const auto& x) { return tensor_to_json(x); }, t);
}

/// Real view of a complex-kind tensor whose entries all have zero
/// imaginary part.
inline Tensor<double> to_real(const Tensor<std::complex<double>>& t) {
  bool ok = true;
  t.for_each_nonzero([&](std::span<const std::uint32_t>, std::complex<double> v) {
    if (v.imag() != 0.0) ok = false;
  });
  if (!ok) throw precondition_error("tensor has complex entries");
  if (t.is_dense()) {
    return Tensor<double>::dense(t.order(), t.dim(), detail::real_parts(t.dense_values()));
  }
  return Tensor<double>::sparse(t.order(), t.dim(), t.sparse_indices(),
                                detail::real_parts(t.sparse_values()));
}

inline Tensor<double> to_real(const AnyTensor& t) {
  if (std::holds_alternative<Tensor<double>>(t)) return std::get<Tensor<double>>(t);
  return to_real(std::get<Tensor<std::complex<double>>>(t));
}

inline nlohmann::json profile_to_json(const RowSumProfile& p) {
  return {{"values", p.values}, {"min", p.min}, {"max", p.max}};
}

inline nlohmann::json interval_to_json(const BoundInterval& b) {
  nlohmann::json j{{"lower", b.lower},
                   {"upper", b.upper},
                   {"method", b.method},
                   {"witnesses", {{"low", b.witness_low}, {"high", b.witness_high}}}};
  if (b.lower_fraction && b.upper_fraction) {
    j["exact"] = {b.lower_fraction->str(), b.upper_fraction->str()};
  }
  return j;
}

inline nlohmann::json estimate_to_json(const EigenEstimate& e) {
  return {{"rho", e.rho},
          {"vector", e.x},
          {"residual", e.residual},
          {"cw_interval", {{"lower", e.cw_lower}, {"upper", e.cw_upper}}},
          {"iterations", e.iterations},
          {"converged", e.converged}};
}

inline nlohmann::json spectrum_to_json(const SpectrumList& s) {
  nlohmann::json eigs = nlohmann::json::array();
  for (const auto& z : s.eigenvalues) eigs.push_back({z.real(), z.imag()});
  return {{"eigenvalues", std::move(eigs)}, {"residuals", s.residuals}};
}

inline nlohmann::json regions_to_json(const std::vector<Disk>& disks) {
  nlohmann::json j{{"type", "gershgorin"}, {"disks", nlohmann::json::array()}};
  for (const Disk& d : disks) {
    j["disks"].push_back({{"center", {d.center.real(), d.center.imag()}},
                          {"radius", d.radius},
                          {"row", d.row}});
  }
  return j;
}

inline nlohmann::json regions_to_json(const std::vector<CircuitRegion>& regions) {
  nlohmann::json j{{"type", "brualdi"}, {"circuit_regions", nlohmann::json::array()}};
  for (const CircuitRegion& r : regions) {
    nlohmann::json e{{"circuit", nlohmann::json::array()},
                     {"centers", nlohmann::json::array()},
                     {"radii", r.radii}};
    for (int v : r.circuit) e["circuit"].push_back(v + 1);
    for (const auto& c : r.centers) e["centers"].push_back({c.real(), c.imag()});
    j["circuit_regions"].push_back(std::move(e));
  }
  return j;
}

inline nlohmann::json containment_to_json(const ContainmentReport& r) {
  return {{"contained", r.contained},
          {"checked", r.checked},
          {"violations", r.violations},
          {"worst", {r.worst.real(), r.worst.imag()}},
          {"worst_excess", r.worst_excess}};
}

inline nlohmann::json certificate_to_json(const CWCertificate& c) {
  return {{"b", tensor_to_json(c.b)},
          {"interval", interval_to_json(c.interval)},
          {"gap", c.gap},
          {"oracle", estimate_to_json(c.oracle)}};
}

}  // namespace tenspec
