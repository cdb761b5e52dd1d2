#ifndef CDLAB_IO_HPP
#define CDLAB_IO_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cdlab/boundary.hpp"
#include "cdlab/group.hpp"
#include "cdlab/harmonic.hpp"
#include "cdlab/ideal.hpp"
#include "cdlab/measure.hpp"

namespace cdlab {

using json = nlohmann::json;

/// Malformed configuration or JSON input; `path` names the offending field
/// (e.g. "measure.atoms.(12)").
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

// Group specifications:
//   {"kind": "cyclic", "n": 6}
//   {"kind": "dihedral", "n": 4}          order 2n
//   {"kind": "symmetric", "n": 3}         n <= 5
//   {"kind": "product", "factors": [spec, spec, ...]}
//   {"kind": "from_table", "cayley": [[...], ...], "labels": ["e", ...]}
GroupPtr group_from_json(const json& spec, const std::string& path = "group");
/// Always emits the lossless "from_table" form.
json group_to_json(const FiniteGroup& g);

// Measure specifications. On a group (carrier given by the caller or by a
// "carrier" group spec):
//   {"weights": [w_0, w_1, ...]}                dense, index order
//   {"atoms": {"(12)": 0.5, "(13)": 0.5}}       keyed by element label
// On Z:
//   {"carrier": {"kind": "integers", "lo": -1}, "weights": [0.5, 0, 0.5]}
//   {"carrier": {"kind": "integers"}, "atoms": {"-1": 0.5, "1": 0.5}}
// A weight is a number or a [re, im] pair (imaginary parts must vanish for
// real measures). Measures are validated as probabilities unless
// "probability": false is given.
Measure<double> measure_from_json(const json& spec, const GroupPtr& group = nullptr,
                                  const std::string& path = "measure");
json measure_to_json(const Measure<double>& mu);
json measure_to_json(const Measure<cplx>& mu);

json to_json(const ProjectionReport& r, bool include_matrix = false);
json to_json(const ChoquetDenyVerdict& v);
json to_json(const DerriennicTrace& t, bool include_norms = false);
json to_json(const CylinderEstimate& e);
json to_json(const MartingaleReport& r);
json to_json(const DiamondReport& r);
json to_json(const StationaryMeasure& s);

/// Writes "n,value" rows under a header line.
void write_series_csv(const std::filesystem::path& file, const std::vector<std::pair<long, double>>& rows,
                      const std::string& header = "n,value");
/// Writes a matrix (one row per line, comma separated, 17 significant digits).
void write_matrix_csv(const std::filesystem::path& file, const MatrixXr& m);

/// Shortest round-trip decimal form used in every CSV.
std::string format_double(double v);

}  // namespace cdlab

#endif  // CDLAB_IO_HPP
