#include "mefkit/io.hpp"

#include <fstream>
#include <sstream>

#include "mefkit/error.hpp"
#include "mefkit/rng.hpp"

namespace mefkit {

namespace {

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  require(in.good(), ErrorCode::IoError, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  require(!in.bad(), ErrorCode::IoError, "cannot read " + file.string());
  return std::move(buf).str();
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::ParseError,
          std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_number_integer(), ErrorCode::ParseError,
          std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Cx cx_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          ErrorCode::ParseError, "complex values are [re, im] pairs");
  return Cx{j[0].get<double>(), j[1].get<double>()};
}

Json cx_to_json(Cx z) { return Json::array({z.real(), z.imag()}); }

std::vector<Cx> values_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::ParseError, "'values' must be an array");
  std::vector<Cx> out;
  out.reserve(j.size());
  for (const Json& entry : j) out.push_back(cx_from_json(entry));
  return out;
}

}  // namespace

Json load_json(const std::filesystem::path& file) {
  const std::string text = read_file(file);
  Json j = Json::parse(text, nullptr, false);
  require(!j.is_discarded(), ErrorCode::ParseError,
          "invalid JSON in " + file.string());
  return j;
}

std::string canonical_text(const Json& j) { return j.dump(2) + "\n"; }

void save_json(const std::filesystem::path& file, const Json& j) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::IoError, "cannot open " + file.string());
  out << canonical_text(j);
  out.flush();
  require(out.good(), ErrorCode::IoError, "cannot write " + file.string());
}

std::string file_hash(const std::filesystem::path& file) {
  return hex64(fnv1a(read_file(file)));
}

CellComplex complex_from_json(const Json& j) {
  const int vertices = int_field(j, "vertices");
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    const Json& je = j.at("edges");
    require(je.is_array(), ErrorCode::ParseError, "'edges' must be an array");
    for (const Json& e : je) {
      require(e.is_array() && e.size() == 2 && e[0].is_number_integer() &&
                  e[1].is_number_integer(),
              ErrorCode::ParseError, "edges are [u, v] pairs");
      edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
  }
  std::vector<Square> squares;
  if (j.contains("squares")) {
    const Json& js = j.at("squares");
    require(js.is_array(), ErrorCode::ParseError, "'squares' must be an array");
    for (const Json& s : js) {
      require(s.is_array() && s.size() == 4, ErrorCode::ParseError,
              "squares are [a, b, c, d] tuples");
      Square sq;
      for (std::size_t i = 0; i < 4; ++i) {
        require(s[i].is_number_integer(), ErrorCode::ParseError,
                "square corners are integers");
        sq[i] = s[i].get<Vertex>();
      }
      squares.push_back(sq);
    }
  }
  return CellComplex(vertices, std::move(edges), std::move(squares));
}

Json complex_to_json(const CellComplex& k) {
  Json edges = Json::array();
  for (const Edge& e : k.edges()) {
    edges.push_back(Json::array({e.first, e.second}));
  }
  Json squares = Json::array();
  for (const Square& s : k.squares()) {
    squares.push_back(Json::array({s[0], s[1], s[2], s[3]}));
  }
  return Json{{"vertices", k.vertex_count()},
              {"edges", std::move(edges)},
              {"squares", std::move(squares)}};
}

CellComplex load_complex(const std::filesystem::path& file) {
  return complex_from_json(load_json(file));
}

void save_complex(const std::filesystem::path& file, const CellComplex& k) {
  save_json(file, complex_to_json(k));
}

LatticeFunction function_from_json(const Json& j,
                                   const std::filesystem::path& base_dir) {
  const Json& ref = field(j, "complex");
  require(ref.is_string(), ErrorCode::ParseError,
          "'complex' must be a file path");
  std::filesystem::path cpath = ref.get<std::string>();
  if (cpath.is_relative()) cpath = base_dir / cpath;
  ComplexPtr k = share(load_complex(cpath));
  return LatticeFunction(std::move(k), values_from_json(field(j, "values")));
}

Json function_to_json(const LatticeFunction& f,
                      const std::string& complex_ref) {
  Json values = Json::array();
  for (Cx z : f.values()) values.push_back(cx_to_json(z));
  return Json{{"complex", complex_ref}, {"values", std::move(values)}};
}

LatticeFunction load_function(const std::filesystem::path& file) {
  return function_from_json(load_json(file), file.parent_path());
}

void save_function(const std::filesystem::path& file, const LatticeFunction& f,
                   const std::string& complex_ref) {
  save_json(file, function_to_json(f, complex_ref));
}

QuotientMap map_from_json(const Json& j,
                          const std::filesystem::path& base_dir) {
  auto resolve = [&](const char* key) {
    const Json& ref = field(j, key);
    require(ref.is_string(), ErrorCode::ParseError,
            std::string("'") + key + "' must be a file path");
    std::filesystem::path p = ref.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return share(load_complex(p));
  };
  ComplexPtr domain = resolve("domain");
  ComplexPtr codomain = resolve("codomain");
  const Json& ja = field(j, "assignment");
  require(ja.is_array(), ErrorCode::ParseError,
          "'assignment' must be an array");
  std::vector<Vertex> assignment;
  assignment.reserve(ja.size());
  for (const Json& v : ja) {
    require(v.is_number_integer(), ErrorCode::ParseError,
            "assignment entries are vertex indices");
    assignment.push_back(v.get<Vertex>());
  }
  return QuotientMap(std::move(domain), std::move(codomain),
                     std::move(assignment));
}

Json map_to_json(const QuotientMap& p, const std::string& domain_ref,
                 const std::string& codomain_ref) {
  return Json{{"domain", domain_ref},
              {"codomain", codomain_ref},
              {"assignment", p.assignment()}};
}

QuotientMap load_map(const std::filesystem::path& file) {
  return map_from_json(load_json(file), file.parent_path());
}

void save_map(const std::filesystem::path& file, const QuotientMap& p,
              const std::string& domain_ref, const std::string& codomain_ref) {
  save_json(file, map_to_json(p, domain_ref, codomain_ref));
}

TorusSystem system_from_json(const Json& j) {
  const int dim = int_field(j, "dim");
  require(dim >= 1, ErrorCode::ParseError, "'dim' must be positive");

  const Json& jm = field(j, "matrix");
  require(jm.is_array() && jm.size() == static_cast<std::size_t>(dim),
          ErrorCode::ParseError, "'matrix' must have dim rows");
  IntMatrix matrix(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < jm.size(); ++i) {
    const Json& row = jm[i];
    require(row.is_array() && row.size() == static_cast<std::size_t>(dim),
            ErrorCode::ParseError, "'matrix' rows must have dim entries");
    for (std::size_t c = 0; c < row.size(); ++c) {
      require(row[c].is_number_integer(), ErrorCode::ParseError,
              "'matrix' entries are integers");
      matrix.at(i, c) = row[c].get<long long>();
    }
  }

  const Json& jr = field(j, "rotation");
  require(jr.is_array() && jr.size() == static_cast<std::size_t>(dim),
          ErrorCode::ParseError, "'rotation' must have dim entries");
  std::vector<RotationEntry> rotation;
  for (const Json& r : jr) {
    require(r.is_string(), ErrorCode::ParseError,
            "rotation entries are strings like \"1/4\" or \"0.25\"");
    rotation.push_back(RotationEntry::parse(r.get<std::string>()));
  }

  const Json& jw = field(j, "warps");
  require(jw.is_array() && jw.size() == static_cast<std::size_t>(dim),
          ErrorCode::ParseError, "'warps' must have dim entries");
  std::vector<Warp> warps;
  for (const Json& w : jw) {
    if (w.is_string()) {
      const std::string name = w.get<std::string>();
      if (name == "identity") {
        warps.push_back(Warp::identity());
      } else if (name == "square") {
        warps.push_back(Warp::square());
      } else {
        fail(ErrorCode::ParseError, "unknown warp '" + name + "'");
      }
    } else if (w.is_array()) {
      std::vector<double> table;
      table.reserve(w.size());
      for (const Json& t : w) {
        require(t.is_number(), ErrorCode::ParseError,
                "warp tables hold numbers");
        table.push_back(t.get<double>());
      }
      warps.push_back(Warp::user_table(std::move(table)));
    } else {
      fail(ErrorCode::ParseError, "warps are names or sample tables");
    }
  }

  return TorusSystem(dim, std::move(matrix), std::move(rotation),
                     std::move(warps), int_field(j, "grid"));
}

std::string rotation_entry_text(const RotationEntry& r) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = numerator(r.exact);
  const cpp_int den = denominator(r.exact);
  if (!r.from_decimal) {
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
  // Parse kept the printed precision, so num * 10^digits / den is integral.
  cpp_int scale = boost::multiprecision::pow(cpp_int(10), r.digits);
  cpp_int scaled = num * scale / den;
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= static_cast<std::size_t>(r.digits)) {
    digits.insert(0,
                  static_cast<std::size_t>(r.digits) + 1 - digits.size(), '0');
  }
  digits.insert(digits.size() - static_cast<std::size_t>(r.digits), ".");
  return negative ? "-" + digits : digits;
}

Json system_to_json(const TorusSystem& sys) {
  Json matrix = Json::array();
  for (std::size_t i = 0; i < sys.matrix().rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < sys.matrix().cols(); ++c) {
      row.push_back(sys.matrix().at(i, c).convert_to<long long>());
    }
    matrix.push_back(std::move(row));
  }
  Json rotation = Json::array();
  for (const RotationEntry& r : sys.rotation()) {
    rotation.push_back(rotation_entry_text(r));
  }
  Json warps = Json::array();
  for (const Warp& w : sys.warps()) {
    switch (w.kind) {
      case WarpKind::Identity:
        warps.push_back("identity");
        break;
      case WarpKind::Square:
        warps.push_back("square");
        break;
      case WarpKind::UserTable:
        warps.push_back(w.table);
        break;
    }
  }
  return Json{{"dim", sys.dim()},
              {"matrix", std::move(matrix)},
              {"rotation", std::move(rotation)},
              {"warps", std::move(warps)},
              {"grid", sys.grid()}};
}

TorusSystem load_system(const std::filesystem::path& file) {
  return system_from_json(load_json(file));
}

void save_system(const std::filesystem::path& file, const TorusSystem& sys) {
  save_json(file, system_to_json(sys));
}

Json eigen_hit_to_json(const EigenHit& hit) {
  return Json{{"k", hit.k},
              {"lambda", cx_to_json(hit.lambda)},
              {"residual", hit.residual},
              {"passes", hit.passes}};
}

EigenHit eigen_hit_from_json(const Json& j) {
  EigenHit hit;
  const Json& jk = field(j, "k");
  require(jk.is_array(), ErrorCode::ParseError, "'k' must be an array");
  for (const Json& c : jk) {
    require(c.is_number_integer(), ErrorCode::ParseError,
            "'k' entries are integers");
    hit.k.push_back(c.get<long long>());
  }
  hit.lambda = cx_from_json(field(j, "lambda"));
  hit.residual = field(j, "residual").get<double>();
  hit.passes = field(j, "passes").get<bool>();
  return hit;
}

Json mef_report_to_json(const MEFReport& r) {
  Json passing = Json::array();
  for (const EigenHit& hit : r.passing) passing.push_back(eigen_hit_to_json(hit));
  Json basis = Json::array();
  for (const auto& row : r.frequency_lattice_basis) basis.push_back(row);
  Json rotation_exact = Json::array();
  for (const auto& q : r.rotation_exact) {
    if (q) {
      rotation_exact.push_back(numerator(*q).str() + "/" +
                               denominator(*q).str());
    } else {
      rotation_exact.push_back(nullptr);
    }
  }
  return Json{{"dim", r.dim},
              {"grid", r.grid},
              {"kmax", r.kmax},
              {"tol", r.tol},
              {"passing", std::move(passing)},
              {"frequency_lattice_basis", std::move(basis)},
              {"m", r.m},
              {"finite_order", r.finite_order},
              {"rotation", r.rotation},
              {"rotation_exact", std::move(rotation_exact)},
              {"bound_b0", r.bound_b0},
              {"bound_b1", r.bound_b1},
              {"bound_ok", r.bound_ok},
              {"applicable", r.applicable},
              {"heuristic", r.heuristic},
              {"invariance_method", r.invariance_method},
              {"symmetric", r.symmetric},
              {"additively_closed", r.additively_closed},
              {"max_passing_residual", r.max_passing_residual},
              {"min_rejected_residual", r.min_rejected_residual}};
}

MEFReport mef_report_from_json(const Json& j) {
  MEFReport r;
  r.dim = int_field(j, "dim");
  r.grid = int_field(j, "grid");
  r.kmax = int_field(j, "kmax");
  r.tol = field(j, "tol").get<double>();
  for (const Json& hit : field(j, "passing")) {
    r.passing.push_back(eigen_hit_from_json(hit));
  }
  for (const Json& row : field(j, "frequency_lattice_basis")) {
    require(row.is_array(), ErrorCode::ParseError,
            "basis rows must be arrays");
    std::vector<long long> g;
    for (const Json& c : row) g.push_back(c.get<long long>());
    r.frequency_lattice_basis.push_back(std::move(g));
  }
  r.m = int_field(j, "m");
  r.finite_order = int_field(j, "finite_order");
  for (const Json& p : field(j, "rotation")) {
    r.rotation.push_back(p.get<double>());
  }
  if (j.contains("rotation_exact")) {
    for (const Json& q : j.at("rotation_exact")) {
      if (q.is_null()) {
        r.rotation_exact.push_back(std::nullopt);
      } else {
        RotationEntry e = RotationEntry::parse(q.get<std::string>());
        r.rotation_exact.push_back(e.exact);
      }
    }
  }
  r.bound_b0 = int_field(j, "bound_b0");
  r.bound_b1 = int_field(j, "bound_b1");
  r.bound_ok = field(j, "bound_ok").get<bool>();
  r.applicable = field(j, "applicable").get<bool>();
  if (j.contains("heuristic")) r.heuristic = j.at("heuristic").get<bool>();
  if (j.contains("invariance_method")) {
    r.invariance_method = j.at("invariance_method").get<std::string>();
  }
  if (j.contains("symmetric")) r.symmetric = j.at("symmetric").get<bool>();
  if (j.contains("additively_closed")) {
    r.additively_closed = j.at("additively_closed").get<bool>();
  }
  if (j.contains("max_passing_residual")) {
    r.max_passing_residual = j.at("max_passing_residual").get<double>();
  }
  if (j.contains("min_rejected_residual")) {
    r.min_rejected_residual = j.at("min_rejected_residual").get<double>();
  }
  return r;
}

Json modulus_table_to_json(const ModulusTable& table) {
  Json omega = Json::array();
  for (const auto& row : table.omega) omega.push_back(row);
  return Json{{"deltas", table.deltas},
              {"horizon", table.horizon},
              {"omega", std::move(omega)}};
}

}  // namespace mefkit
