// Command-line front end: tensor file I/O, bounds, inclusion regions,
// oracles, and the built-in example verification.

#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tenspec/tenspec.hpp"

namespace {

using nlohmann::json;
using namespace tenspec;

struct RunContext {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<std::string> warnings;
  json payload;
  bool emit_payload = true;
};

std::string fnv1a_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AnyTensor load_input(RunContext& ctx, const std::string& path) {
  AnyTensor t = load_tensor(path);
  ctx.inputs.emplace_back(path, fnv1a_digest(path));
  return t;
}

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0' || parsed == 0) {
    throw validation_error(std::string(name) + " must be a positive integer");
  }
  return static_cast<std::size_t>(parsed);
}

// ---- subcommand bodies ----------------------------------------------------

void run_info(RunContext& ctx, const std::string& file) {
  const AnyTensor t = load_input(ctx, file);
  std::visit(
      [&](const auto& a) {
        json j;
        j["order"] = a.order();
        j["dim"] = a.dim();
        j["format"] = a.is_dense() ? "dense" : "coo";
        j["stored"] = a.stored_count();
        j["nonzeros"] = a.nonzero_count();
        j["nonneg"] = a.nonneg();
        j["scalar"] = is_complex_v<typename std::decay_t<decltype(a)>::scalar_type>
                          ? "complex"
                          : "real";
        j["row_sums"] = profile_to_json(row_sums(a));
        j["diagonal"] = json::array();
        for (auto d : diagonal(a)) j["diagonal"].push_back(detail::scalar_to_json(d));
        if (a.order() >= 2) {
          j["weakly_irreducible"] = weakly_irreducible_standard(a);
        }
        ctx.payload = std::move(j);
      },
      t);
}

void run_rowsum(RunContext& ctx, const std::string& file_a,
                const std::string& file_b, bool bound) {
  const AnyTensor a = load_input(ctx, file_a);
  if (file_b.empty()) {
    ctx.payload = std::visit([&](const auto& x) { return profile_to_json(row_sums(x)); }, a);
    return;
  }
  const AnyTensor b = load_input(ctx, file_b);
  std::visit(
      [&](const auto& x, const auto& y) {
        if (bound) {
          ctx.payload = profile_to_json(product_row_sum_bound(x, y));
          ctx.payload["bound"] = true;
        } else {
          ctx.payload = profile_to_json(product_row_sums(x, y));
        }
      },
      a, b);
}

void run_product(RunContext& ctx, const std::string& file_a, const std::string& file_b,
                 int power, const std::string& out) {
  const std::size_t cap = env_cap("TENSPEC_ENTRY_CAP", default_entry_cap);
  const AnyTensor a = load_input(ctx, file_a);
  AnyTensor result = a;
  if (power > 0) {
    if (!file_b.empty()) {
      throw validation_error("give either a second tensor or --power, not both");
    }
    result = std::visit([&](const auto& x) -> AnyTensor { return tensor_power(x, power, cap); },
                        a);
  } else {
    if (file_b.empty()) throw validation_error("product needs a second tensor or --power");
    const AnyTensor b = load_input(ctx, file_b);
    result = std::visit(
        [&](const auto& x, const auto& y) -> AnyTensor { return general_product(x, y, cap); },
        a, b);
  }
  json doc = tensor_to_json(result);
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw validation_error("cannot write " + out);
    os << doc.dump(2) << '\n';
    std::visit(
        [&](const auto& r) {
          ctx.payload = {{"written", out},
                         {"order", r.order()},
                         {"dim", r.dim()},
                         {"stored", r.stored_count()}};
        },
        result);
  } else {
    ctx.payload = std::move(doc);
  }
}

void run_bounds(RunContext& ctx, const std::string& kind, const std::string& file_a,
                const std::string& file_b, bool self, int k) {
  const AnyTensor a = load_input(ctx, file_a);
  BoundInterval b;
  if (kind == "rowsum") {
    b = std::visit([](const auto& x) { return rowsum_bounds(x); }, a);
  } else if (kind == "minc") {
    if (self || file_b.empty()) {
      b = std::visit([](const auto& x) { return minc_self(x); }, a);
    } else {
      const AnyTensor t2 = load_input(ctx, file_b);
      b = std::visit([](const auto& x, const auto& y) { return minc_bounds(x, y); }, a, t2);
    }
  } else if (kind == "minc-power") {
    b = std::visit([&](const auto& x) { return minc_power(x, k); }, a);
  } else if (kind == "product") {
    if (file_b.empty()) throw validation_error("bounds product needs two tensors");
    const AnyTensor t2 = load_input(ctx, file_b);
    b = std::visit([](const auto& x, const auto& y) { return product_rho_bounds(x, y); }, a, t2);
  } else {  // power
    b = std::visit([&](const auto& x) { return power_rho_bounds(x, k); }, a);
  }
  ctx.payload = interval_to_json(b);
}

std::optional<std::vector<std::complex<double>>> oracle_eigenvalues(
    RunContext& ctx, const AnyTensor& a, const AnyTensor& b, std::size_t entry_cap) {
  const ProductShape shape =
      std::visit([](const auto& x, const auto& y) { return product_shape(x, y); }, a, b);
  const bool matrix_case = shape.order == 2 && shape.dim <= 8;
  const bool small_case = shape.order == 3 && shape.dim == 2;
  if (!matrix_case && !small_case) {
    ctx.warnings.push_back("no exact eigenvalue oracle for order " +
                           std::to_string(shape.order) + " dimension " +
                           std::to_string(shape.dim));
    return std::nullopt;
  }
  const AnyTensor ab = std::visit(
      [&](const auto& x, const auto& y) -> AnyTensor { return general_product(x, y, entry_cap); },
      a, b);
  const SpectrumList s = std::visit(
      [&](const auto& p) {
        return matrix_case ? matrix_spectrum(p) : small_tensor_spectrum(p);
      },
      ab);
  return s.eigenvalues;
}

void run_regions(RunContext& ctx, const std::string& kind, const std::string& file_a,
                 const std::string& file_b, const std::string& svg_file, bool overlay,
                 int grid) {
  const std::size_t entry_cap = env_cap("TENSPEC_ENTRY_CAP", default_entry_cap);
  const std::size_t circuit_cap = env_cap("TENSPEC_CIRCUIT_CAP", default_circuit_cap);
  const AnyTensor a = load_input(ctx, file_a);
  const AnyTensor b = load_input(ctx, file_b);

  const std::vector<Disk> disks =
      std::visit([](const auto& x, const auto& y) { return gershgorin_regions(x, y); }, a, b);
  std::vector<CircuitRegion> circuit_regions;
  if (kind == "brualdi") {
    circuit_regions = std::visit(
        [&](const auto& x, const auto& y) {
          return brualdi_regions(x, y, circuit_cap, entry_cap);
        },
        a, b);
    ctx.payload = regions_to_json(circuit_regions);
  } else {
    ctx.payload = regions_to_json(disks);
  }

  std::optional<std::vector<std::complex<double>>> eigs;
  if (overlay) {
    eigs = oracle_eigenvalues(ctx, a, b, entry_cap);
    if (eigs) {
      json je = json::array();
      for (const auto& z : *eigs) je.push_back({z.real(), z.imag()});
      ctx.payload["eigenvalues"] = std::move(je);
    }
  }
  if (grid > 0 && kind == "brualdi") {
    const ContainmentReport rep = std::visit(
        [&](const auto& x, const auto& y) {
          return check_containment_B_in_G(x, y, grid, grid, circuit_cap);
        },
        a, b);
    ctx.payload["containment"] = containment_to_json(rep);
  }
  if (!svg_file.empty()) {
    std::ofstream os(svg_file);
    if (!os) throw validation_error("cannot write " + svg_file);
    os << render_svg(disks, kind == "brualdi" ? &circuit_regions : nullptr,
                     eigs ? &*eigs : nullptr);
    ctx.payload["svg_file"] = svg_file;
  }
}

void run_rho(RunContext& ctx, const std::string& file, double tol, int max_iter) {
  const Tensor<double> a = to_real(load_input(ctx, file));
  const EigenEstimate est = power_rho(a, tol, max_iter);
  if (!est.converged) {
    ctx.warnings.push_back("iteration stopped at max_iter with interval width " +
                           std::to_string(est.cw_upper - est.cw_lower));
  }
  ctx.payload = estimate_to_json(est);
}

void run_cw_cert(RunContext& ctx, const std::string& file, int k, double tol) {
  const Tensor<double> a = to_real(load_input(ctx, file));
  ctx.payload = certificate_to_json(cw_certificate(a, k, tol));
}

// ---- verify-paper ----------------------------------------------------------

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<Check> example_checks(const Tensor<double>& a) {
  std::vector<Check> checks;
  auto add = [&](const std::string& name, auto&& body) {
    Check c;
    c.name = name;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  };

  auto compare_profile = [](Check& c, const char* label, const std::vector<double>& got,
                            const std::vector<double>& want) {
    if (got.size() != want.size()) {
      c.detail = std::string(label) + " has " + std::to_string(got.size()) +
                 " components, expected " + std::to_string(want.size());
      return;
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (got[i] != want[i]) {
        c.detail = std::string(label).insert(1, "_" + std::to_string(i + 1)) + " = " +
                   fmt_g(got[i]) + ", expected " + fmt_g(want[i]);
        return;
      }
    }
    c.pass = true;
  };

  add("r(A) = (7, 9)", [&](Check& c) {
    compare_profile(c, "r(A)", row_sums(a).values, {7.0, 9.0});
  });

  add("r(A^2) = (417, 621)", [&](Check& c) {
    const std::vector<double> fast = product_row_sums(a, a).values;
    compare_profile(c, "r(A^2)", fast, {417.0, 621.0});
    if (!c.pass) return;
    const std::vector<double> direct = row_sums(general_product(a, a)).values;
    if (direct != fast) {
      c.pass = false;
      c.detail = "materialized row sums disagree with the propagation rule";
    }
  });

  add("row-sum interval = [7, 9]", [&](Check& c) {
    const BoundInterval b = rowsum_bounds(a);
    c.pass = b.lower == 7.0 && b.upper == 9.0;
    if (!c.pass) c.detail = "got [" + fmt_g(b.lower) + ", " + fmt_g(b.upper) + "]";
  });

  add("quotient interval = [621/81, 417/49]", [&](Check& c) {
    const BoundInterval b = minc_self(a);
    if (!b.lower_fraction || !b.upper_fraction) {
      c.detail = "exact fractions unavailable";
      return;
    }
    if (!(*b.lower_fraction == Fraction{621, 81} && *b.upper_fraction == Fraction{417, 49})) {
      c.detail = "got [" + b.lower_fraction->str() + ", " + b.upper_fraction->str() + "]";
      return;
    }
    if (std::abs(b.lower - 621.0 / 81.0) > 1e-12 || std::abs(b.upper - 417.0 / 49.0) > 1e-12) {
      c.detail = "float endpoints drift from the rationals";
      return;
    }
    c.pass = true;
  });

  add("quotient interval nests strictly in [7, 9]", [&](Check& c) {
    const BoundInterval outer = rowsum_bounds(a);
    const BoundInterval inner = minc_self(a);
    c.pass = outer.lower < inner.lower && inner.upper < outer.upper;
    if (!c.pass) {
      c.detail = "[" + fmt_g(inner.lower) + ", " + fmt_g(inner.upper) + "] vs [" +
                 fmt_g(outer.lower) + ", " + fmt_g(outer.upper) + "]";
    }
  });

  add("oracle rho lies in both intervals", [&](Check& c) {
    const EigenEstimate est = power_rho(a);
    const BoundInterval outer = rowsum_bounds(a);
    const BoundInterval inner = minc_self(a);
    if (!est.converged) {
      c.detail = "iteration did not converge";
      return;
    }
    c.pass = outer.lower <= est.rho && est.rho <= outer.upper && inner.lower <= est.rho &&
             est.rho <= inner.upper;
    if (!c.pass) c.detail = "rho = " + fmt_g(est.rho);
  });

  return checks;
}

int run_verify_paper(RunContext& ctx, const std::string& fixture, bool as_json) {
  Tensor<double> a = Tensor<double>::dense(3, 2, {3, 1, 2, 1, 0, 4, 2, 3});
  if (!fixture.empty()) a = to_real(load_input(ctx, fixture));

  const std::vector<Check> checks = example_checks(a);
  std::size_t passed = 0;
  const Check* first_fail = nullptr;
  for (const Check& c : checks) {
    if (c.pass) {
      ++passed;
    } else if (!first_fail) {
      first_fail = &c;
    }
  }

  if (as_json) {
    json j{{"pass", passed == checks.size()}, {"checks", json::array()}};
    for (const Check& c : checks) {
      j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    std::cout << j.dump(2) << '\n';
  } else {
    for (const Check& c : checks) {
      std::cout << (c.pass ? "ok   " : "FAIL ") << c.name;
      if (!c.pass && !c.detail.empty()) std::cout << ": " << c.detail;
      std::cout << '\n';
    }
    std::cout << "verify-paper: " << (passed == checks.size() ? "PASS" : "FAIL") << " ("
              << passed << "/" << checks.size() << " checks)\n";
  }
  if (first_fail) {
    std::cerr << "verify-paper: first failure: " << first_fail->name;
    if (!first_fail->detail.empty()) std::cerr << ": " << first_fail->detail;
    std::cerr << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"row-sum bounds, eigenvalue inclusion regions, and oracles for tensor products"};
  app.require_subcommand(1);
  bool report = false;
  app.add_flag("--report", report, "wrap output in a run report envelope");

  RunContext ctx;
  std::string file_a, file_b, out_file, svg_file, fixture;
  bool self = false, bound = false, overlay = false, vp_json = false;
  int k = 1, power = 0, grid = 0, max_iter = default_oracle_max_iter;
  double tol = default_oracle_tol;
  int verify_exit = 0;

  auto* info = app.add_subcommand("info", "describe a tensor file");
  info->add_option("tensor", file_a)->required();
  info->callback([&] { run_info(ctx, file_a); });

  auto* rowsum = app.add_subcommand("rowsum", "row sums of a tensor or of a product");
  rowsum->add_option("tensor", file_a)->required();
  rowsum->add_option("right", file_b, "right factor: row sums of the product, unmaterialized");
  rowsum->add_flag("--bound", bound, "emit the upper-bound vector instead (any scalars)");
  rowsum->callback([&] { run_rowsum(ctx, file_a, file_b, bound); });

  auto* product = app.add_subcommand("product", "materialize a general product or power");
  product->add_option("tensor", file_a)->required();
  product->add_option("right", file_b);
  product->add_option("--power", power, "compute the k-th power of the single input");
  product->add_option("-o,--out", out_file, "write the result to a file");
  product->callback([&] { run_product(ctx, file_a, file_b, power, out_file); });

  auto* bounds = app.add_subcommand("bounds", "spectral radius enclosures");
  bounds->require_subcommand(1);
  for (const char* kind : {"rowsum", "minc", "minc-power", "product", "power"}) {
    auto* sub = bounds->add_subcommand(kind);
    sub->add_option("tensor", file_a)->required();
    if (std::string(kind) == "minc" || std::string(kind) == "product") {
      sub->add_option("right", file_b);
    }
    if (std::string(kind) == "minc") {
      sub->add_flag("--self", self, "use the tensor itself as the right factor");
    }
    if (std::string(kind) == "minc-power" || std::string(kind) == "power") {
      sub->add_option("-k", k, "power index")->check(CLI::PositiveNumber);
    }
    sub->callback([&, kind] { run_bounds(ctx, kind, file_a, file_b, self, k); });
  }

  auto* regions = app.add_subcommand("regions", "eigenvalue inclusion regions of a product");
  regions->require_subcommand(1);
  for (const char* kind : {"gershgorin", "brualdi"}) {
    auto* sub = regions->add_subcommand(kind);
    sub->add_option("tensor", file_a)->required();
    sub->add_option("right", file_b)->required();
    sub->add_option("--svg", svg_file, "write an SVG rendering");
    sub->add_flag("--overlay-eigs", overlay, "include oracle eigenvalues where one applies");
    if (std::string(kind) == "brualdi") {
      sub->add_option("--grid", grid, "check containment in the disk union on an NxN grid");
    }
    sub->callback([&, kind] { run_regions(ctx, kind, file_a, file_b, svg_file, overlay, grid); });
  }

  auto* rho = app.add_subcommand("rho", "spectral radius by shifted power iteration");
  rho->add_option("tensor", file_a)->required();
  rho->add_option("--tol", tol)->check(CLI::PositiveNumber);
  rho->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
  rho->callback([&] { run_rho(ctx, file_a, tol, max_iter); });

  auto* cw = app.add_subcommand("cw-cert", "certificate tensor whose quotients pin rho");
  cw->add_option("tensor", file_a)->required();
  cw->add_option("-k", k, "certificate order")->check(CLI::PositiveNumber);
  cw->add_option("--tol", tol)->check(CLI::PositiveNumber);
  cw->callback([&] { run_cw_cert(ctx, file_a, k, tol); });

  auto* verify = app.add_subcommand("verify-paper", "check the built-in worked example");
  verify->add_flag("--json", vp_json, "machine-readable check list");
  verify->add_option("--fixture", fixture, "tensor file replacing the built-in example");
  verify->callback([&] {
    ctx.emit_payload = false;
    verify_exit = run_verify_paper(ctx, fixture, vp_json);
  });

  const auto enable_fallthrough = [](auto&& self, CLI::App* node) -> void {
    for (CLI::App* s : node->get_subcommands({})) {
      s->fallthrough();
      self(self, s);
    }
  };
  enable_fallthrough(enable_fallthrough, &app);

  const auto start = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (ctx.emit_payload) {
    const CLI::App* sub = &app;
    while (!sub->get_subcommands().empty()) {
      sub = sub->get_subcommands().front();
      ctx.command += (ctx.command.empty() ? "" : " ") + sub->get_name();
    }
    if (report) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      json env{{"command", ctx.command},
               {"inputs", json::array()},
               {"outputs", ctx.payload},
               {"timing_ms", ms},
               {"warnings", ctx.warnings}};
      for (const auto& [path, digest] : ctx.inputs) {
        env["inputs"].push_back({{"path", path}, {"digest", digest}});
      }
      std::cout << env.dump(2) << '\n';
    } else {
      for (const std::string& w : ctx.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << ctx.payload.dump(2) << '\n';
    }
  }
  return verify_exit;
}
