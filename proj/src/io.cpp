#include "cdlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace cdlab {

namespace {

const json& require(const json& spec, const char* key, const std::string& path) {
  if (!spec.is_object() || !spec.contains(key)) throw ConfigError(path + "." + key, "missing field");
  return spec.at(key);
}

int require_int(const json& spec, const char* key, const std::string& path) {
  const auto& v = require(spec, key, path);
  if (!v.is_number_integer()) throw ConfigError(path + "." + key, "expected an integer");
  return v.get<int>();
}

double weight_value(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    if (std::abs(v[1].get<double>()) > kProbabilityTol)
      throw ConfigError(path, "complex weight where a real measure is required");
    return v[0].get<double>();
  }
  throw ConfigError(path, "weight must be a number or a [re, im] pair");
}

}  // namespace

GroupPtr group_from_json(const json& spec, const std::string& path) {
  if (!spec.is_object()) throw ConfigError(path, "group spec must be an object");
  const auto& kind_v = require(spec, "kind", path);
  if (!kind_v.is_string()) throw ConfigError(path + ".kind", "expected a string");
  const auto kind = kind_v.get<std::string>();
  try {
    if (kind == "cyclic") return cyclic_group(require_int(spec, "n", path));
    if (kind == "dihedral") return dihedral_group(require_int(spec, "n", path));
    if (kind == "symmetric") return symmetric_group(require_int(spec, "n", path));
    if (kind == "product") {
      const auto& factors = require(spec, "factors", path);
      if (!factors.is_array() || factors.empty()) throw ConfigError(path + ".factors", "expected a nonempty array");
      GroupPtr g = group_from_json(factors[0], path + ".factors[0]");
      for (size_t i = 1; i < factors.size(); ++i)
        g = product_group(*g, *group_from_json(factors[i], path + ".factors[" + std::to_string(i) + "]"));
      return g;
    }
    if (kind == "from_table") {
      const auto& table = require(spec, "cayley", path);
      std::vector<std::vector<int>> cayley;
      try {
        cayley = table.get<std::vector<std::vector<int>>>();
      } catch (const json::exception&) {
        throw ConfigError(path + ".cayley", "expected an array of integer rows");
      }
      std::vector<std::string> labels;
      if (spec.contains("labels")) labels = spec.at("labels").get<std::vector<std::string>>();
      return group_from_table(std::move(cayley), std::move(labels));
    }
  } catch (const ConstructionError& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + ".kind", "unknown group kind '" + kind + "'");
}

json group_to_json(const FiniteGroup& g) {
  return json{{"kind", "from_table"}, {"cayley", g.cayley()}, {"labels", g.labels()}};
}

Measure<double> measure_from_json(const json& spec, const GroupPtr& group, const std::string& path) {
  if (!spec.is_object()) throw ConfigError(path, "measure spec must be an object");
  bool on_integers = false;
  long lo = 0;
  GroupPtr carrier = group;
  if (spec.contains("carrier")) {
    const auto& c = spec.at("carrier");
    if (c.is_object() && c.value("kind", "") == "integers") {
      on_integers = true;
      lo = c.value("lo", 0L);
    } else if (c.is_string() && c.get<std::string>() == "integers") {
      on_integers = true;
    } else {
      carrier = group_from_json(c, path + ".carrier");
    }
  }
  if (!on_integers && !carrier) throw ConfigError(path + ".carrier", "no group carrier given");

  std::optional<Measure<double>> mu;
  try {
    if (spec.contains("weights")) {
      const auto& w = spec.at("weights");
      if (!w.is_array() || w.empty()) throw ConfigError(path + ".weights", "expected a nonempty array");
      VectorXr v(static_cast<Eigen::Index>(w.size()));
      for (size_t i = 0; i < w.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = weight_value(w[i], path + ".weights[" + std::to_string(i) + "]");
      mu = on_integers ? Measure<double>(IntegerWindow{lo}, std::move(v)) : Measure<double>(carrier, std::move(v));
    } else if (spec.contains("atoms")) {
      const auto& atoms = spec.at("atoms");
      if (!atoms.is_object() || atoms.empty()) throw ConfigError(path + ".atoms", "expected a nonempty object");
      if (on_integers) {
        std::vector<std::pair<long, double>> list;
        for (const auto& [key, value] : atoms.items()) {
          long k = 0;
          const auto res = std::from_chars(key.data(), key.data() + key.size(), k);
          if (res.ec != std::errc{} || res.ptr != key.data() + key.size())
            throw ConfigError(path + ".atoms." + key, "expected an integer key");
          list.emplace_back(k, weight_value(value, path + ".atoms." + key));
        }
        mu = Measure<double>::from_atoms(list);
      } else {
        std::vector<std::pair<int, double>> list;
        for (const auto& [key, value] : atoms.items()) {
          const auto x = carrier->find(key);
          if (!x) throw ConfigError(path + ".atoms." + key, "unknown group element");
          list.emplace_back(*x, weight_value(value, path + ".atoms." + key));
        }
        mu = Measure<double>::from_atoms(carrier, list);
      }
    } else {
      throw ConfigError(path, "measure needs 'weights' or 'atoms'");
    }
    if (spec.value("probability", true)) return mu->as_probability();
  } catch (const ConstructionError& e) {
    throw ConfigError(path, e.what());
  }
  return *mu;
}

namespace {

template <typename Scalar>
json measure_json_impl(const Measure<Scalar>& mu) {
  json weights = json::array();
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if constexpr (std::is_same_v<Scalar, cplx>)
      weights.push_back({mu[i].real(), mu[i].imag()});
    else
      weights.push_back(mu[i]);
  }
  json carrier = mu.on_group() ? group_to_json(mu.group()) : json{{"kind", "integers"}, {"lo", mu.lo()}};
  return json{{"carrier", carrier}, {"weights", weights}, {"probability", mu.is_probability()}};
}

}  // namespace

json measure_to_json(const Measure<double>& mu) { return measure_json_impl(mu); }
json measure_to_json(const Measure<cplx>& mu) { return measure_json_impl(mu); }

json to_json(const ProjectionReport& r, bool include_matrix) {
  json c = json::object();
  for (const auto& [name, v] : r.commutation_residuals) c[name] = v;
  json out{{"cesaro_terms", r.cesaro_terms},
           {"cesaro_step", r.cesaro_step},
           {"cesaro_converged", r.cesaro_converged},
           {"refinement_squarings", r.refinement_squarings},
           {"idempotency_residual", r.idempotency_residual},
           {"norm_inf", r.norm_inf},
           {"min_entry", r.min_entry},
           {"row_sum_residual", r.row_sum_residual},
           {"commutation_residuals", c},
           {"converged", r.converged}};
  if (include_matrix) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < r.K.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < r.K.cols(); ++j) row.push_back(r.K(i, j));
      rows.push_back(row);
    }
    out["K"] = rows;
  }
  return out;
}

json to_json(const ChoquetDenyVerdict& v) {
  return json{{"diamond_is_pointwise", v.diamond_is_pointwise},
              {"harmonic_is_trivial", v.harmonic_is_trivial},
              {"diamond_residual", v.diamond_residual},
              {"subspace_residual", v.subspace_residual},
              {"harmonic_rank", v.harmonic_rank},
              {"trivial_rank", v.trivial_rank},
              {"coset_count", v.coset_count},
              {"consistent", v.consistent()}};
}

json to_json(const DerriennicTrace& t, bool include_norms) {
  json out{{"lp_distance", t.lp_distance},
           {"inf", t.inf},
           {"limit_estimate", t.limit_estimate},
           {"N", t.norms.size()},
           {"subadditivity_violation", t.subadditivity_violation},
           {"lower_bound_violation", t.lower_bound_violation}};
  if (include_norms) out["norms"] = t.norms;
  return out;
}

json to_json(const CylinderEstimate& e) {
  return json{{"estimate", e.estimate}, {"stderr", e.stderr_},       {"exact", e.exact},
              {"n_paths", e.n_paths},   {"inconclusive_count", e.inconclusive}, {"seed", e.seed}};
}

json to_json(const MartingaleReport& r) {
  return json{{"n_paths", r.n_paths},
              {"conclusive", r.conclusive},
              {"inconclusive_count", r.inconclusive},
              {"agreement", r.agreement},
              {"threshold", r.threshold},
              {"conclusive_fraction", r.conclusive_fraction},
              {"agreement_fraction", r.agreement_fraction},
              {"seed", r.seed}};
}

json to_json(const DiamondReport& r) {
  return json{{"estimate", r.estimate},
              {"stderr", r.stderr_},
              {"diamond_value", r.diamond_value},
              {"pointwise_value", r.pointwise_value},
              {"n_paths", r.n_paths},
              {"inconclusive_count", 0},
              {"seed", r.seed}};
}

json to_json(const StationaryMeasure& s) {
  auto vec = [](const VectorXr& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  return json{{"measure", vec(s.measure)},
              {"eigen_solution", vec(s.eigen_solution)},
              {"power_solution", vec(s.power_solution)},
              {"eigen_residual", s.eigen_residual},
              {"power_residual", s.power_residual},
              {"residual", s.residual},
              {"fixed_space_dim", s.fixed_space_dim},
              {"iterations", s.iterations},
              {"converged", s.converged}};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_series_csv(const std::filesystem::path& file, const std::vector<std::pair<long, double>>& rows,
                      const std::string& header) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << header << '\n';
  for (const auto& [n, v] : rows) out << n << ',' << format_double(v) << '\n';
}

void write_matrix_csv(const std::filesystem::path& file, const MatrixXr& m) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

}  // namespace cdlab
