#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "s3radon/reconstruction.hpp"

namespace s3radon {

/// Samples CSV: header `hx,hy,hz,rx,ry,rz,rho_deg,value[,sigma]`, angles in
/// degrees on disk and radians in memory.  Directions off unit norm by up to
/// 1e-6 are renormalized; larger violations are rejected with the row number.
std::vector<SampleRecord> parse_samples(std::istream& in);
std::vector<SampleRecord> parse_samples_file(const std::string& path);
void emit_samples(const std::vector<SampleRecord>& records, std::ostream& out);
void emit_samples_file(const std::vector<SampleRecord>& records, const std::string& path);

/// Model JSON:
///   {"type":"uniform"}
///   {"type":"rbf","components":[{"kernel":"dlvp"|"abel_poisson","kappa":k,
///                                "center":[q0,q1,q2,q3],"weight":w}, ...]}
///   {"type":"harmonic","L":L,"coeffs":[[l,m,n,value],...]}
OdfModel parse_model(const std::string& json_text);
OdfModel parse_model_file(const std::string& path);
std::string model_to_json(const OdfModel& model);
void write_model_file(const OdfModel& model, const std::string& path);

/// CoeffTable CSV with columns l,m,n,value (even l only).
void write_coeff_table(const CoeffTable& table, std::ostream& out);
CoeffTable read_coeff_table(std::istream& in);

/// FNV-1a hash of a canonicalized configuration string, for output provenance
/// headers.
std::string config_hash(const std::string& canonical_config);

/// Writes a CSV table with `# key: value` comment headers (config hash,
/// resolutions) followed by a header row and data rows at 17 significant
/// digits.
class TableWriter {
 public:
  TableWriter(std::ostream& out, const std::vector<std::string>& comments,
              const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
};

/// Format a double losslessly (17 significant digits).
std::string format_double(double v);

}  // namespace s3radon
