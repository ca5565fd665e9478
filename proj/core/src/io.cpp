#include "s3radon/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifdef S3RADON_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

namespace s3radon {

using nlohmann::json;

namespace {

constexpr double kDegPerRad = 180.0 / kPi;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, int row, const char* what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("not finite");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("samples CSV row " + std::to_string(row) + ": bad " + what + " '" +
                             s + "'");
  }
}

Dir3 parse_direction(double x, double y, double z, int row, const char* what) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (std::fabs(n - 1.0) > 1e-6)
    throw std::runtime_error("samples CSV row " + std::to_string(row) + ": " + what +
                             " has norm " + std::to_string(n) + ", exceeds 1e-6 tolerance");
  if (std::fabs(n - 1.0) < 1e-14) return {x, y, z};  // keep round trips bitwise
  return {x / n, y / n, z / n};
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<SampleRecord> parse_samples(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("samples CSV: missing header");
  const auto header = split_csv_line(line);
  const bool with_sigma = header.size() == 9;
  if (!(header.size() == 8 || with_sigma) || header[0] != "hx" || header[6] != "rho_deg" ||
      header[7] != "value")
    throw std::runtime_error(
        "samples CSV: bad header, expected hx,hy,hz,rx,ry,rz,rho_deg,value[,sigma]");
  std::vector<SampleRecord> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size())
      throw std::runtime_error("samples CSV row " + std::to_string(row) + ": expected " +
                               std::to_string(header.size()) + " fields, got " +
                               std::to_string(f.size()));
    SampleRecord rec;
    rec.h = parse_direction(parse_number(f[0], row, "hx"), parse_number(f[1], row, "hy"),
                            parse_number(f[2], row, "hz"), row, "h");
    rec.r = parse_direction(parse_number(f[3], row, "rx"), parse_number(f[4], row, "ry"),
                            parse_number(f[5], row, "rz"), row, "r");
    const double rho_deg = parse_number(f[6], row, "rho_deg");
    if (rho_deg < -1e-9 || rho_deg > 180.0 + 1e-9)
      throw std::runtime_error("samples CSV row " + std::to_string(row) +
                               ": rho_deg out of [0, 180]");
    rec.rho = rho_deg / kDegPerRad;
    rec.value = parse_number(f[7], row, "value");
    if (with_sigma) rec.sigma = parse_number(f[8], row, "sigma");
    out.push_back(rec);
  }
  return out;
}

std::vector<SampleRecord> parse_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open samples file: " + path);
  return parse_samples(in);
}

void emit_samples(const std::vector<SampleRecord>& records, std::ostream& out) {
  bool with_sigma = false;
  for (const auto& r : records) with_sigma = with_sigma || r.sigma.has_value();
  out << "hx,hy,hz,rx,ry,rz,rho_deg,value";
  if (with_sigma) out << ",sigma";
  out << "\n";
  for (const auto& r : records) {
    out << format_double(r.h.x) << ',' << format_double(r.h.y) << ',' << format_double(r.h.z)
        << ',' << format_double(r.r.x) << ',' << format_double(r.r.y) << ','
        << format_double(r.r.z) << ',' << format_double(r.rho * kDegPerRad) << ','
        << format_double(r.value);
    if (with_sigma) out << ',' << format_double(r.sigma.value_or(0.0));
    out << "\n";
  }
}

void emit_samples_file(const std::vector<SampleRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  emit_samples(records, out);
}

namespace {

KernelSpec kernel_from_json(const json& j) {
  const std::string kind = j.at("kernel").get<std::string>();
  const double kappa = j.at("kappa").get<double>();
  if (kind == "dlvp") return de_la_vallee_poussin(kappa);
  if (kind == "abel_poisson") return abel_poisson(kappa);
  throw std::runtime_error("model JSON: unknown kernel '" + kind + "'");
}

const char* kernel_name(KernelKind k) {
  return k == KernelKind::DeLaValleePoussin ? "dlvp" : "abel_poisson";
}

}  // namespace

OdfModel parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("model JSON parse error: ") + e.what());
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") return UniformOdf{};
  if (type == "rbf") {
    RbfMixture m;
    for (const auto& c : j.at("components")) {
      RbfComponent comp;
      comp.spec = kernel_from_json(c);
      const auto& ctr = c.at("center");
      if (ctr.size() != 4) throw std::runtime_error("model JSON: center must have 4 entries");
      comp.center = normalized(Quat{ctr[0].get<double>(), ctr[1].get<double>(),
                                    ctr[2].get<double>(), ctr[3].get<double>()});
      comp.weight = c.at("weight").get<double>();
      m.components.push_back(comp);
    }
    validate_model(m);
    return m;
  }
  if (type == "harmonic") {
    const int lmax = j.at("L").get<int>();
    CoeffTable table(lmax);
    for (const auto& e : j.at("coeffs")) {
      if (e.size() != 4) throw std::runtime_error("model JSON: coeff entries are [l,m,n,value]");
      table.set(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<double>());
    }
    return HarmonicModel{std::move(table)};
  }
  throw std::runtime_error("model JSON: unknown type '" + type + "'");
}

OdfModel parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string model_to_json(const OdfModel& model) {
  json j;
  if (std::holds_alternative<UniformOdf>(model)) {
    j["type"] = "uniform";
  } else if (const auto* rbf = std::get_if<RbfMixture>(&model)) {
    j["type"] = "rbf";
    j["components"] = json::array();
    for (const auto& c : rbf->components) {
      j["components"].push_back({{"kernel", kernel_name(c.spec.kind)},
                                 {"kappa", c.spec.kappa},
                                 {"center", {c.center.w, c.center.x, c.center.y, c.center.z}},
                                 {"weight", c.weight}});
    }
  } else {
    const auto& hm = std::get<HarmonicModel>(model);
    j["type"] = "harmonic";
    j["L"] = hm.table.max_degree();
    j["coeffs"] = json::array();
    for (int l = 0; l <= hm.table.max_degree(); l += 2)
      for (int m = -l; m <= l; ++m)
        for (int n = -l; n <= l; ++n) {
          const double v = hm.table.at(l, m, n);
          if (v != 0.0) j["coeffs"].push_back({l, m, n, v});
        }
  }
  return j.dump(2);
}

void write_model_file(const OdfModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << model_to_json(model) << "\n";
}

void write_coeff_table(const CoeffTable& table, std::ostream& out) {
  out << "l,m,n,value\n";
  for (int l = 0; l <= table.max_degree(); l += 2)
    for (int m = -l; m <= l; ++m)
      for (int n = -l; n <= l; ++n)
        out << l << ',' << m << ',' << n << ',' << format_double(table.at(l, m, n)) << "\n";
}

CoeffTable read_coeff_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"l", "m", "n", "value"})
    throw std::runtime_error("coefficient CSV: bad header, expected l,m,n,value");
  struct Entry {
    int l, m, n;
    double v;
  };
  std::vector<Entry> entries;
  int lmax = 0, row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4)
      throw std::runtime_error("coefficient CSV row " + std::to_string(row) + ": need 4 fields");
    Entry e{std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), parse_number(f[3], row, "value")};
    lmax = std::max(lmax, e.l);
    entries.push_back(e);
  }
  CoeffTable table(lmax % 2 == 0 ? lmax : lmax + 1);
  for (const auto& e : entries) table.set(e.l, e.m, e.n, e.v);
  return table;
}

std::string config_hash(const std::string& canonical_config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_config) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TableWriter::TableWriter(std::ostream& out, const std::vector<std::string>& comments,
                         const std::vector<std::string>& columns)
    : out_(out), columns_(columns.size()) {
  for (const auto& c : comments) out_ << "# " << c << "\n";
  for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

void TableWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::invalid_argument("TableWriter: column count mismatch");
  for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << "\n";
}

}  // namespace s3radon
