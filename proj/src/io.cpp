#include "cliffcorr/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cliffcorr/errors.hpp"
#include "json.hpp"

namespace cliffcorr::io {
namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  if (!j.is_object()) throw InvalidInput(path + ": top level is not an object");
  return j;
}

const json& field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw InvalidInput(path + ": missing field \"" + key + "\"");
  return *it;
}

std::uint64_t read_uint(const json& j, const std::string& path, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw InvalidInput(path + ": " + what + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::vector<std::uint64_t> read_uint_list(const json& j, const std::string& path,
                                          const char* what) {
  if (!j.is_array()) throw InvalidInput(path + ": " + what + " must be a list");
  std::vector<std::uint64_t> out;
  out.reserve(j.size());
  for (const auto& entry : j) out.push_back(read_uint(entry, path, what));
  return out;
}

Vec vec_of(std::uint64_t p, const std::vector<std::uint64_t>& vals) {
  Vec v(p, vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v.set(i, Fp(vals[i] % p, p));
  return v;
}

/// Accepts a d x d matrix as either a flat row-major list of d*d integers or
/// as d nested rows of d integers.
Matrix read_square_matrix(const json& j, const std::string& path, std::uint64_t p,
                          std::size_t d, const char* what) {
  if (!j.is_array()) throw InvalidInput(path + ": " + what + " must be a list");
  Matrix m(p, d, d);
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != d)
      throw InvalidInput(path + ": " + what + " must have " + std::to_string(d) + " rows");
    for (std::size_t i = 0; i < d; ++i) {
      auto row = read_uint_list(j[i], path, what);
      if (row.size() != d)
        throw InvalidInput(path + ": " + what + " rows must have length " +
                           std::to_string(d));
      for (std::size_t k = 0; k < d; ++k) m.set(i, k, Fp(row[k] % p, p));
    }
    return m;
  }
  auto flat = read_uint_list(j, path, what);
  if (flat.size() != d * d)
    throw InvalidInput(path + ": " + what + " must have " + std::to_string(d * d) +
                       " entries");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) m.set(i, k, Fp(flat[i * d + k] % p, p));
  return m;
}

}  // namespace

Algebra read_algebra(const std::string& path) {
  json j = load_json(path);
  std::uint64_t p = read_uint(field(j, path, "p"), path, "\"p\"");
  std::uint64_t dim = read_uint(field(j, path, "dim"), path, "\"dim\"");
  if (dim == 0 || dim > 4096) throw InvalidInput(path + ": unsupported dimension");
  require_odd_prime(p);
  auto one_vals = read_uint_list(field(j, path, "one"), path, "\"one\"");
  if (one_vals.size() != dim)
    throw InvalidInput(path + ": \"one\" must have length " + std::to_string(dim));

  std::vector<Vec> products(dim * dim, Vec(p, dim));
  std::vector<bool> seen(dim * dim * dim, false);
  const json& mul = field(j, path, "mul");
  if (!mul.is_array()) throw InvalidInput(path + ": \"mul\" must be a list");
  for (const auto& entry : mul) {
    auto t = read_uint_list(entry, path, "\"mul\" entry");
    if (t.size() != 4)
      throw InvalidInput(path + ": \"mul\" entries must be [i, j, k, c]");
    if (t[0] >= dim || t[1] >= dim || t[2] >= dim)
      throw InvalidInput(path + ": \"mul\" index out of range");
    std::size_t flat = (t[0] * dim + t[1]) * dim + t[2];
    if (seen[flat]) throw InvalidInput(path + ": duplicate \"mul\" triple");
    seen[flat] = true;
    products[t[0] * dim + t[1]].set(t[2], Fp(t[3] % p, p));
  }
  try {
    return Algebra::from_structure_constants(p, dim, std::move(products),
                                             vec_of(p, one_vals));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

CayleyTable read_group(const std::string& path) {
  json j = load_json(path);
  try {
    if (j.contains("table")) {
      std::uint64_t order = read_uint(field(j, path, "order"), path, "\"order\"");
      const json& table = field(j, path, "table");
      if (!table.is_array() || table.size() != order)
        throw InvalidInput(path + ": \"table\" must have \"order\" rows");
      std::vector<std::vector<std::size_t>> rows;
      rows.reserve(order);
      for (const auto& r : table) {
        auto vals = read_uint_list(r, path, "\"table\" row");
        rows.emplace_back(vals.begin(), vals.end());
      }
      return CayleyTable::from_table(std::move(rows));
    }
    std::uint64_t degree = read_uint(field(j, path, "degree"), path, "\"degree\"");
    const json& gens = field(j, path, "generators");
    if (!gens.is_array() || gens.empty())
      throw InvalidInput(path + ": \"generators\" must be a nonempty list");
    std::vector<std::vector<std::size_t>> perms;
    perms.reserve(gens.size());
    for (const auto& g : gens) {
      auto vals = read_uint_list(g, path, "generator");
      perms.emplace_back(vals.begin(), vals.end());
    }
    return CayleyTable::from_permutations(degree, perms);
  } catch (const InvalidInput& e) {
    std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw InvalidInput(path + ": " + msg);
  }
}

std::vector<std::vector<std::uint64_t>> read_cocycle(const std::string& path) {
  json j = load_json(path);
  const json& alpha = field(j, path, "alpha");
  if (!alpha.is_array() || alpha.empty())
    throw InvalidInput(path + ": \"alpha\" must be a nonempty list of rows");
  std::vector<std::vector<std::uint64_t>> out;
  out.reserve(alpha.size());
  for (const auto& r : alpha) out.push_back(read_uint_list(r, path, "\"alpha\" row"));
  for (const auto& r : out)
    if (r.size() != out.size())
      throw InvalidInput(path + ": \"alpha\" must be square");
  return out;
}

std::vector<Matrix> read_action(const std::string& path, std::uint64_t p) {
  json j = load_json(path);
  const json& mats = field(j, path, "matrices");
  if (!mats.is_array() || mats.empty())
    throw InvalidInput(path + ": \"matrices\" must be a nonempty list");
  const json& first = mats.front();
  std::size_t d = 0;
  if (first.is_array() && !first.empty() && first.front().is_array()) {
    d = first.size();
  } else if (first.is_array()) {
    while (d * d < first.size()) ++d;
  }
  std::vector<Matrix> out;
  out.reserve(mats.size());
  for (const auto& m : mats)
    out.push_back(read_square_matrix(m, path, p, d, "\"matrices\" entry"));
  return out;
}

Module read_module(const std::string& path, const Algebra& a) {
  json j = load_json(path);
  std::uint64_t d = read_uint(field(j, path, "dim"), path, "\"dim\"");
  const json& action = field(j, path, "action");
  if (!action.is_array() || action.size() != a.dim())
    throw InvalidInput(path + ": \"action\" must have one matrix per basis element (" +
                       std::to_string(a.dim()) + ")");
  std::vector<Matrix> rho;
  rho.reserve(a.dim());
  for (const auto& m : action)
    rho.push_back(read_square_matrix(m, path, a.modulus(), d, "\"action\" entry"));
  try {
    return Module(a, std::move(rho));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

Subalgebra read_subalgebra(const std::string& path, const Algebra& ambient) {
  json j = load_json(path);
  const json& basis = field(j, path, "basis");
  if (!basis.is_array() || basis.empty())
    throw InvalidInput(path + ": \"basis\" must be a nonempty list of vectors");
  Matrix rows(ambient.modulus(), basis.size(), ambient.dim());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto vals = read_uint_list(basis[i], path, "\"basis\" row");
    if (vals.size() != ambient.dim())
      throw InvalidInput(path + ": \"basis\" vectors must have length " +
                         std::to_string(ambient.dim()));
    rows.set_row(i, vec_of(ambient.modulus(), vals));
  }
  try {
    return Subalgebra::from_basis(ambient, rows);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

namespace {

/// nlohmann's dump() puts every array element on its own line once an indent
/// is requested, which makes structure-constant files unreadable.  The
/// writers emit one compact inner list per line instead.
std::string int_list(const std::vector<std::uint64_t>& vals) {
  std::ostringstream s;
  s << "[";
  for (std::size_t i = 0; i < vals.size(); ++i) s << (i ? ", " : "") << vals[i];
  s << "]";
  return s.str();
}

std::string list_block(const std::vector<std::string>& lines, const char* indent) {
  std::ostringstream s;
  s << "[\n";
  for (std::size_t i = 0; i < lines.size(); ++i)
    s << indent << "  " << lines[i] << (i + 1 < lines.size() ? "," : "") << "\n";
  s << indent << "]";
  return s.str();
}

std::vector<std::uint64_t> vec_values(const Vec& v) {
  std::vector<std::uint64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.at(i).value();
  return out;
}

}  // namespace

std::string algebra_to_json(const Algebra& a) {
  std::vector<std::string> triples;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const Vec& prod = a.structure(i, k);
      for (std::size_t l = 0; l < a.dim(); ++l)
        if (!prod.at(l).is_zero())
          triples.push_back(int_list({i, k, l, prod.at(l).value()}));
    }
  std::ostringstream s;
  s << "{\n  \"dim\": " << a.dim() << ",\n  \"mul\": " << list_block(triples, "  ")
    << ",\n  \"one\": " << int_list(vec_values(a.one())) << ",\n  \"p\": " << a.modulus()
    << "\n}";
  return s.str();
}

std::string module_to_json(const Module& m) {
  std::vector<std::string> mats;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    std::vector<std::uint64_t> flat;
    flat.reserve(m.dim() * m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c)
        flat.push_back(m.action(i).at(r, c).value());
    mats.push_back(int_list(flat));
  }
  std::ostringstream s;
  s << "{\n  \"action\": " << list_block(mats, "  ") << ",\n  \"dim\": " << m.dim()
    << "\n}";
  return s.str();
}

std::string subalgebra_to_json(const Subalgebra& b) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < b.dim(); ++i)
    rows.push_back(int_list(vec_values(b.basis_rows().row(i))));
  std::ostringstream s;
  s << "{\n  \"basis\": " << list_block(rows, "  ") << "\n}";
  return s.str();
}

}  // namespace cliffcorr::io
