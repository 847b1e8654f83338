#pragma once

// Wire format: JSON in, JSON out.  Matrices travel as
// {"rows": r, "cols": c, "data": [[...row...], ...]} with every entry a
// [re, im] pair (a bare number is accepted on input as shorthand for a
// real entry).  Reports are emitted through a canonical writer -- keys
// sorted, floats printed with %.17g, non-finite values mapped to null,
// one line plus trailing newline -- so identical computations produce
// byte-identical documents.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "posinorm/classes.hpp"
#include "posinorm/chains.hpp"
#include "posinorm/gallery.hpp"
#include "posinorm/harness.hpp"
#include "posinorm/shifts.hpp"

namespace posinorm::io {

using json = nlohmann::json;

/// Malformed input: unreadable file, bad JSON, bad weight grammar,
/// unknown suite name.  CLI exit code 2.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally valid input with unusable shape (non-square matrix,
/// size fields that disagree with the data).  CLI exit code 3.
struct dimension_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic size guard tripped (dimension caps).  CLI exit code 5.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr Index kMaxDimension = 4096;

// ---------------------------------------------------------------------------
// canonical JSON emission
// ---------------------------------------------------------------------------

namespace detail {

inline void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

inline void append_canonical(std::string& out, const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      out += "null";
      break;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%" PRId64, j.get<std::int64_t>());
      out += buf;
      break;
    }
    case json::value_t::number_unsigned: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%" PRIu64, j.get<std::uint64_t>());
      out += buf;
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    case json::value_t::string:
      append_escaped(out, j.get_ref<const std::string&>());
      break;
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        append_canonical(out, item);
      }
      out += ']';
      break;
    }
    case json::value_t::object: {
      // nlohmann's default object container is std::map: iteration is
      // already in sorted key order.
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        append_escaped(out, it.key());
        out += ':';
        append_canonical(out, it.value());
      }
      out += '}';
      break;
    }
    default:
      out += "null";
      break;
  }
}

}  // namespace detail

inline std::string canonical_dump(const json& j) {
  std::string out;
  detail::append_canonical(out, j);
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

namespace detail {

inline double entry_number(const json& j, const char* what) {
  if (!j.is_number()) throw parse_error(std::string(what) + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw parse_error(std::string(what) + " is not finite");
  return v;
}

}  // namespace detail

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw parse_error("matrix document needs rows, cols and data fields");
  if (!j["rows"].is_number_integer() && !j["rows"].is_number_unsigned())
    throw parse_error("rows must be an integer");
  if (!j["cols"].is_number_integer() && !j["cols"].is_number_unsigned())
    throw parse_error("cols must be an integer");
  const auto rows = j["rows"].get<std::int64_t>();
  const auto cols = j["cols"].get<std::int64_t>();
  if (rows < 1 || cols < 1) throw dimension_error("rows/cols must be >= 1");
  if (rows > kMaxDimension || cols > kMaxDimension)
    throw resource_error("matrix dimension exceeds cap of 4096");
  const json& data = j["data"];
  if (!data.is_array() || static_cast<std::int64_t>(data.size()) != rows)
    throw parse_error("data must hold exactly `rows` row arrays");
  Matrix m(rows, cols);
  for (std::int64_t r = 0; r < rows; ++r) {
    const json& row = data[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != cols)
      throw parse_error("each data row must hold exactly `cols` entries");
    for (std::int64_t c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = Complex(detail::entry_number(e, "matrix entry"), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = Complex(detail::entry_number(e[0], "matrix entry"),
                          detail::entry_number(e[1], "matrix entry"));
      } else {
        throw parse_error("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

inline Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("invalid JSON in " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

inline json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

inline json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

inline json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

// ---------------------------------------------------------------------------
// weight-spec grammar: const:c | pow:p | recip | bilrecip | geom:r | list:a,b,c
// ---------------------------------------------------------------------------

namespace detail {

inline double parse_number(const std::string& s, const char* what) {
  if (s.empty()) throw parse_error(std::string(what) + ": empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw parse_error(std::string(what) + ": bad number '" + s + "'");
  if (!std::isfinite(v))
    throw parse_error(std::string(what) + ": non-finite number");
  return v;
}

}  // namespace detail

inline shifts::WeightSequence parse_weight_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const std::string arg = has_arg ? spec.substr(colon + 1) : std::string();

  if (head == "recip" || head == "bilrecip") {
    if (has_arg)
      throw parse_error("weight spec '" + head + "' takes no argument");
    return head == "recip" ? shifts::WeightSequence::reciprocal()
                           : shifts::WeightSequence::bilateral_reciprocal();
  }
  if (!has_arg)
    throw parse_error("weight spec '" + spec + "' needs an argument");
  if (head == "const")
    return shifts::WeightSequence::constant(detail::parse_number(arg, "const"));
  if (head == "pow")
    return shifts::WeightSequence::power_law(detail::parse_number(arg, "pow"));
  if (head == "geom")
    return shifts::WeightSequence::geometric(detail::parse_number(arg, "geom"));
  if (head == "list") {
    std::vector<double> values;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ','))
      values.push_back(detail::parse_number(item, "list entry"));
    if (values.empty()) throw parse_error("list spec needs at least one weight");
    return shifts::WeightSequence::list(std::move(values));
  }
  throw parse_error("unknown weight spec '" + spec +
                    "' (expected const:c, pow:p, recip, bilrecip, geom:r or "
                    "list:a,b,c)");
}

inline const char* weight_kind_token(shifts::WeightKind k) {
  switch (k) {
    case shifts::WeightKind::constant: return "const";
    case shifts::WeightKind::power_law: return "pow";
    case shifts::WeightKind::reciprocal: return "recip";
    case shifts::WeightKind::bilateral_reciprocal: return "bilrecip";
    case shifts::WeightKind::geometric: return "geom";
    case shifts::WeightKind::explicit_list: return "list";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

inline json to_json(const Tolerance& tol) {
  return json{{"rank_rel_tol", tol.rank_rel_tol},
              {"psd_tol", tol.psd_tol},
              {"residual_tol", tol.residual_tol}};
}

inline json to_json(const ClassVerdict& v) {
  json j;
  j["holds"] = v.holds;
  j["alpha"] = v.alpha ? json(*v.alpha) : json(nullptr);
  j["witness"] = v.witness ? vector_to_json(*v.witness) : json(nullptr);
  return j;
}

inline json to_json(const std::vector<EigenvalueAlpha>& table) {
  json arr = json::array();
  for (const auto& row : table)
    arr.push_back(json{{"lambda", complex_to_json(row.lambda)},
                       {"alpha", std::isfinite(row.alpha)
                                     ? json(row.alpha)
                                     : json(nullptr)},
                       {"finite", std::isfinite(row.alpha)}});
  return arr;
}

inline json to_json(const ClassificationReport& r) {
  json j;
  j["scope"] = "finite-dimensional";
  j["dim"] = r.dim;
  j["posinormal"] = to_json(r.posinormal);
  j["coposinormal"] = to_json(r.coposinormal);
  j["quasiposinormal"] = to_json(r.quasiposinormal);
  j["coquasiposinormal"] = to_json(r.coquasiposinormal);
  j["hyponormal"] = to_json(r.hyponormal);
  j["cohyponormal"] = to_json(r.cohyponormal);
  j["normal"] = to_json(r.normal);
  j["dominant"] = to_json(r.dominant);
  j["codominant"] = to_json(r.codominant);
  j["invertible"] = to_json(r.invertible);
  j["dominant_table"] = to_json(r.dominant_table);
  j["codominant_table"] = to_json(r.codominant_table);
  return j;
}

inline json to_json(const ChainProfile& p) {
  return json{{"op_dim", p.op_dim},
              {"n_max", p.n_max},
              {"kernel_dims", p.kernel_dims},
              {"range_ranks", p.range_ranks},
              {"ascent", p.ascent},
              {"descent", p.descent}};
}

inline json to_json(const shifts::ShiftVerdict& v) {
  json j;
  j["n"] = v.n;
  j["horizon"] = v.horizon;
  j["closed_form"] = v.closed_form;
  j["estimate"] = v.estimate;
  j["infinite"] = v.infinite;
  j["log_sup"] = std::isfinite(v.log_sup) ? json(v.log_sup) : json(nullptr);
  j["sup_value"] =
      std::isfinite(v.sup_value) ? json(v.sup_value) : json(nullptr);
  j["attained_j"] = v.attained_j;
  j["bound_n_squared"] = std::isfinite(v.bound_n_squared)
                             ? json(v.bound_n_squared)
                             : json(nullptr);
  j["mid_bound"] =
      std::isfinite(v.mid_bound) ? json(v.mid_bound) : json(nullptr);
  j["sup_within_n_squared_bound"] =
      !v.infinite && v.sup_value <= v.bound_n_squared * (1.0 + 1e-12) + 1e-12;
  j["posinormal"] = v.posinormal;
  return j;
}

inline json to_json(const gallery::BlowupReport& r) {
  json table = json::array();
  for (std::size_t i = 0; i < r.per_block_beta.size(); ++i)
    table.push_back(json{{"k", i + 1},
                         {"one_over_k", 1.0 / static_cast<double>(i + 1)},
                         {"beta", r.per_block_beta[i]}});
  return json{{"per_block", std::move(table)},
              {"alpha_half", r.alpha_half},
              {"alpha_full", r.alpha_full},
              {"witness_k", r.witness_k}};
}

inline json to_json(const harness::TrialFailure& f) {
  json measured = json::object();
  for (const auto& [name, value] : f.measured)
    measured[name] = std::isfinite(value) ? json(value) : json(nullptr);
  return json{{"seed", f.seed},
              {"property", f.property},
              {"measured", std::move(measured)}};
}

/// Canonical payload for one suite run.  elapsed_seconds is
/// deliberately NOT serialized here: wall time varies run to run and
/// the stdout report must be byte-identical for identical inputs.
/// The CLI reports timing on stderr instead.
inline json to_json(const harness::SuiteResult& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  return json{{"suite", r.suite},
              {"trials", r.trials},
              {"dim_max", r.dim_max},
              {"master_seed", r.master_seed},
              {"failures", std::move(failures)},
              {"passed", r.passed()}};
}

/// Top-level report envelope shared by every subcommand.
inline json report_document(const std::string& command, json parameters,
                            const Tolerance& tol, json result) {
  return json{{"schema_version", "1"},
              {"command", command},
              {"parameters", std::move(parameters)},
              {"tolerance", to_json(tol)},
              {"result", std::move(result)}};
}

// ---------------------------------------------------------------------------
// plain-text rendering (the --text flag)
// ---------------------------------------------------------------------------

namespace detail {

inline void render_text_impl(const json& j, const std::string& indent,
                             std::string& out) {
  switch (j.type()) {
    case json::value_t::object:
      for (auto it = j.begin(); it != j.end(); ++it) {
        out += indent + it.key() + ":";
        if (it.value().is_object() || it.value().is_array()) {
          out += '\n';
          render_text_impl(it.value(), indent + "  ", out);
        } else {
          std::string scalar;
          append_canonical(scalar, it.value());
          out += " " + scalar + '\n';
        }
      }
      break;
    case json::value_t::array:
      for (const auto& item : j) {
        if (item.is_object() || item.is_array()) {
          out += indent + "-\n";
          render_text_impl(item, indent + "  ", out);
        } else {
          std::string scalar;
          append_canonical(scalar, item);
          out += indent + "- " + scalar + '\n';
        }
      }
      break;
    default: {
      std::string scalar;
      append_canonical(scalar, j);
      out += indent + scalar + '\n';
    }
  }
}

}  // namespace detail

inline std::string render_text(const json& j) {
  std::string out;
  detail::render_text_impl(j, "", out);
  return out;
}

}  // namespace posinorm::io
