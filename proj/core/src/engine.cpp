#include "hallbridge/engine.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string_view>

#include "hallbridge/error.hpp"
#include "hallbridge/hall_cache.hpp"

namespace hallbridge {

namespace {

size_t idx(int i) { return static_cast<size_t>(i); }

long long ipow(long long base, long long e, long long cap) {
  long long r = 1;
  for (long long k = 0; k < e; ++k) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

Morphism power(const RepSpace& s, const Morphism& f, int e) {
  Morphism out = f;
  for (int k = 1; k < e; ++k) out = s.compose(f, out);
  return out;
}

mpz_class gl_order_mpz(int n, const mpz_class& q) {
  mpz_class out = 1, qn, qk = 1;
  mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
  for (int k = 0; k < n; ++k) {
    out *= qn - qk;
    qk *= q;
  }
  return out;
}

constexpr std::string_view kSumTag = ";sum=";
constexpr int kSplitSamples = 64;

}  // namespace

RepEngine::RepEngine(Quiver quiver, int q, EngineLimits limits) : space_(std::move(quiver), q), limits_(limits) {}

RepEngine::~RepEngine() = default;

std::string RepEngine::raw_encoding(const Rep& m) const {
  std::string s;
  for (int d : m.dim) s += static_cast<char>(d);
  for (const auto& mat : m.maps) s.append(mat.data().begin(), mat.data().end());
  return s;
}

std::string RepEngine::fingerprint(const Weight& dim, const Weight& top, const Weight& socle) const {
  return to_string(dim) + "|" + to_string(top) + "|" + to_string(socle);
}

IsoKey RepEngine::key_from_rep(const Rep& m) const {
  const bool digits = q() <= 10;
  std::string s = "d=" + to_string(m.dim);
  for (int a = 0; a < quiver().num_arrows(); ++a) {
    const Matrix& mat = m.maps[idx(a)];
    s += ';' + quiver().arrows()[idx(a)].label + '=';
    for (int r = 0; r < mat.rows(); ++r) {
      if (r) s += '/';
      for (int c = 0; c < mat.cols(); ++c) {
        if (!digits && c) s += '.';
        s += std::to_string(mat(r, c));
      }
    }
  }
  return {s};
}

Rep RepEngine::rep_from_key(const IsoKey& key) const {
  const std::string& t = key.text;
  auto fail = [&]() -> FormatError { return FormatError("malformed isoclass key: " + t); };
  if (t.rfind("d=", 0) != 0) throw fail();
  if (auto tag = t.find(kSumTag); tag != std::string::npos) {
    // d=...;sum=[key]^m[key]^m...
    Rep out = space_.zero_rep();
    size_t pos = tag + kSumTag.size();
    if (pos == t.size()) throw fail();
    while (pos < t.size()) {
      if (t[pos] != '[') throw fail();
      int depth = 0;
      size_t end = pos;
      for (; end < t.size(); ++end) {
        if (t[end] == '[') ++depth;
        if (t[end] == ']' && --depth == 0) break;
      }
      if (end == t.size() || end + 1 >= t.size() || t[end + 1] != '^') throw fail();
      Rep summand = rep_from_key({t.substr(pos + 1, end - pos - 1)});
      size_t digits = end + 2;
      while (digits < t.size() && std::isdigit(static_cast<unsigned char>(t[digits]))) ++digits;
      if (digits == end + 2) throw fail();
      int mult = std::stoi(t.substr(end + 2, digits - end - 2));
      if (mult < 1) throw fail();
      for (int k = 0; k < mult; ++k) out = space_.direct_sum(out, summand);
      pos = digits;
    }
    Weight d;
    try {
      d = parse_weight(t.substr(2, tag - 2));
    } catch (const Error&) {
      throw fail();
    }
    if (d != out.dim) throw fail();
    return out;
  }
  std::vector<std::string> parts;
  {
    std::string cur;
    for (char c : t.substr(2)) {
      if (c == ';') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
  }
  if (static_cast<int>(parts.size()) != quiver().num_arrows() + 1) throw fail();
  Rep m;
  try {
    m.dim = parse_weight(parts[0]);
  } catch (const Error&) {
    throw fail();
  }
  if (static_cast<int>(m.dim.size()) != quiver().num_vertices()) throw fail();
  const bool digits = q() <= 10;
  for (int a = 0; a < quiver().num_arrows(); ++a) {
    const auto& arr = quiver().arrows()[idx(a)];
    const std::string& p = parts[idx(a + 1)];
    const std::string head = arr.label + "=";
    if (p.rfind(head, 0) != 0) throw fail();
    Matrix mat(m.dim[idx(arr.target)], m.dim[idx(arr.source)]);
    std::string body = p.substr(head.size());
    std::vector<std::string> rows;
    if (mat.rows() > 0) {
      std::string cur;
      for (char c : body) {
        if (c == '/') {
          rows.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      rows.push_back(cur);
    } else if (!body.empty()) {
      throw fail();
    }
    if (static_cast<int>(rows.size()) != mat.rows()) throw fail();
    for (int r = 0; r < mat.rows(); ++r) {
      std::vector<int> entries;
      if (digits) {
        for (char c : rows[idx(r)]) {
          if (c < '0' || c > '9') throw fail();
          entries.push_back(c - '0');
        }
      } else if (!rows[idx(r)].empty()) {
        std::stringstream ss(rows[idx(r)]);
        std::string tok;
        while (std::getline(ss, tok, '.')) entries.push_back(std::stoi(tok));
      }
      if (static_cast<int>(entries.size()) != mat.cols()) throw fail();
      for (int c = 0; c < mat.cols(); ++c) {
        if (entries[idx(c)] >= q()) throw fail();
        mat(r, c) = static_cast<Elem>(entries[idx(c)]);
      }
    }
    m.maps.push_back(std::move(mat));
  }
  return m;
}

ClassId RepEngine::register_class(const IsoKey& key, const Rep& rep) {
  Weight top = space_.top_dim(rep), soc = space_.socle_dim(rep);
  std::unique_lock lock(registry_mu_);
  auto it = by_key_.find(key.text);
  if (it != by_key_.end()) return it->second;
  auto id = static_cast<ClassId>(classes_.size());
  classes_.push_back({key, rep, std::move(top), std::move(soc)});
  by_key_.emplace(key.text, id);
  return id;
}

bool RepEngine::orbit_keyed(const Weight& d) const {
  long long group = 1;
  for (int x : d) {
    long long g = gl_order(x, q());
    if (g > limits_.max_group / group) return false;
    group *= g;
  }
  return true;
}

std::optional<Morphism> RepEngine::splitting_endomorphism(const Rep& m) const {
  // phi splits m by Fitting's lemma iff it is neither invertible nor nilpotent.
  const int n = total(m.dim);
  const auto basis = space_.hom_basis(m, m);
  const Morphism zero = space_.zero_morphism(m, m), id = space_.identity(m);
  auto splits = [&](const Morphism& phi) { return !space_.is_isomorphism(phi) && !space_.is_zero(power(space_, phi, n)); };
  const int k = static_cast<int>(basis.size());
  if (k <= 1) return std::nullopt;  // End m = F_q

  // Sampling finds a splitting element quickly when one exists.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> coeff(0, q() - 1);
  std::vector<Elem> c(static_cast<size_t>(k));
  for (int s = 0; s < kSplitSamples; ++s) {
    for (auto& x : c) x = static_cast<Elem>(coeff(rng));
    Morphism phi = space_.combine(basis, c, zero);
    for (int lambda = 0; lambda < q(); ++lambda) {
      Morphism psi = space_.add(phi, space_.scale(field().neg(static_cast<Elem>(lambda)), id));
      if (splits(psi)) return psi;
    }
  }
  // Otherwise certify locality by running through all of End m.
  if (ipow(q(), k, limits_.max_hom_elements) > limits_.max_hom_elements)
    throw ResourceError("cannot certify that a representation of dim " + to_string(m.dim) + " is indecomposable");
  std::fill(c.begin(), c.end(), Elem{0});
  while (true) {
    Morphism phi = space_.combine(basis, c, zero);
    if (splits(phi)) return phi;
    size_t v = 0;
    while (v < c.size() && ++c[v] == q()) c[v++] = 0;
    if (v == c.size()) return std::nullopt;
  }
}

std::vector<Rep> RepEngine::split_indecomposables(const Rep& m) const {
  std::vector<Rep> todo{m}, out;
  while (!todo.empty()) {
    Rep x = std::move(todo.back());
    todo.pop_back();
    if (total(x.dim) == 0) continue;
    auto phi = splitting_endomorphism(x);
    if (!phi) {
      out.push_back(std::move(x));
      continue;
    }
    Morphism p = power(space_, *phi, total(x.dim));
    todo.push_back(space_.subrep(x, space_.image(x, p)));
    todo.push_back(space_.subrep(x, space_.kernel(x, p)));
  }
  return out;
}

std::map<ClassId, int> RepEngine::decompose(const Rep& m) {
  space_.check(m);
  std::map<ClassId, int> out;
  for (const Rep& x : split_indecomposables(m)) ++out[classify(x)];
  return out;
}

ClassId RepEngine::sum_classify(const Rep& m, const std::string& raw) {
  std::vector<Rep> parts = split_indecomposables(m);
  if (parts.size() == 1) throw ResourceError("indecomposable of dim " + to_string(m.dim) + " is too large for a canonical key");
  std::map<std::string, std::pair<ClassId, int>> summands;
  for (const Rep& x : parts) {
    ClassId id = classify(x);
    auto& slot = summands.try_emplace(key(id).text, id, 0).first->second;
    ++slot.second;
  }
  std::string text = "d=" + to_string(m.dim) + std::string(kSumTag);
  Rep canonical = space_.zero_rep();
  for (const auto& [k, entry] : summands) {
    text += "[" + k + "]^" + std::to_string(entry.second);
    for (int i = 0; i < entry.second; ++i) canonical = space_.direct_sum(canonical, rep(entry.first));
  }
  ClassId id = register_class({text}, canonical);
  std::unique_lock lock(registry_mu_);
  by_raw_.emplace(raw, id);
  return id;
}

ClassId RepEngine::orbit_classify(const Rep& m, const std::string& raw) {
  const Field& f = field();
  const int nv = quiver().num_vertices();
  ++counters_.orbit_searches;

  std::vector<const std::vector<Matrix>*> gl(idx(nv));
  std::vector<std::vector<Matrix>> inv(idx(nv));
  for (int i = 0; i < nv; ++i) {
    gl[idx(i)] = &general_linear_group(f, m.dim[idx(i)]);
    for (const auto& g : *gl[idx(i)]) inv[idx(i)].push_back(inverse(f, g));
  }

  std::set<std::string> orbit;
  std::string best;
  Rep best_rep;
  std::vector<size_t> pick(idx(nv), 0);
  Rep cur = m;
  while (true) {
    for (int a = 0; a < quiver().num_arrows(); ++a) {
      const auto& arr = quiver().arrows()[idx(a)];
      cur.maps[idx(a)] = multiply(f, multiply(f, (*gl[idx(arr.target)])[pick[idx(arr.target)]], m.maps[idx(a)]),
                                  inv[idx(arr.source)][pick[idx(arr.source)]]);
    }
    std::string enc = raw_encoding(cur);
    if (orbit.insert(enc).second && (best.empty() || enc < best)) {
      best = enc;
      best_rep = cur;
    }
    int v = 0;
    while (v < nv && ++pick[idx(v)] == gl[idx(v)]->size()) pick[idx(v++)] = 0;
    if (v == nv) break;
  }
  ClassId id = register_class(key_from_rep(best_rep), best_rep);
  std::unique_lock lock(registry_mu_);
  for (const auto& e : orbit) by_raw_.emplace(e, id);
  by_raw_.emplace(raw, id);
  return id;
}

ClassId RepEngine::classify(const Rep& m) {
  space_.check(m);
  std::string raw = raw_encoding(m);
  bool complete = false;
  {
    std::shared_lock lock(registry_mu_);
    auto it = by_raw_.find(raw);
    if (it != by_raw_.end()) return it->second;
    complete = by_dim_.count(m.dim) > 0;
  }
  if (complete) {
    // Within a fully enumerated dimension, a fingerprint shared by no other
    // class identifies the class without an orbit search.
    std::string fp = fingerprint(m.dim, space_.top_dim(m), space_.socle_dim(m));
    std::unique_lock lock(registry_mu_);
    auto b = buckets_.find(fp);
    if (b != buckets_.end() && b->second.size() == 1) {
      by_raw_.emplace(raw, b->second.front());
      return b->second.front();
    }
  }
  return orbit_keyed(m.dim) ? orbit_classify(m, raw) : sum_classify(m, raw);
}

IsoKey RepEngine::canonical_key(const Rep& m) { return key(classify(m)); }

ClassId RepEngine::intern_key(const IsoKey& k) {
  {
    std::shared_lock lock(registry_mu_);
    auto it = by_key_.find(k.text);
    if (it != by_key_.end()) return it->second;
  }
  Rep m = rep_from_key(k);
  space_.check(m);
  ClassId id = classify(m);
  if (key(id) != k) throw FormatError("isoclass key is not canonical: " + k.text);
  return id;
}

ClassId RepEngine::zero_class() { return classify(space_.zero_rep()); }

const IsoKey& RepEngine::key(ClassId id) const {
  std::shared_lock lock(registry_mu_);
  return classes_.at(id).key;
}

const Rep& RepEngine::rep(ClassId id) const {
  std::shared_lock lock(registry_mu_);
  return classes_.at(id).rep;
}

const Weight& RepEngine::dim(ClassId id) const {
  std::shared_lock lock(registry_mu_);
  return classes_.at(id).rep.dim;
}

bool RepEngine::class_less(ClassId x, ClassId y) const {
  if (x == y) return false;
  std::shared_lock lock(registry_mu_);
  const auto& a = classes_.at(x);
  const auto& b = classes_.at(y);
  int ta = total(a.rep.dim), tb = total(b.rep.dim);
  if (ta != tb) return ta < tb;
  if (a.rep.dim != b.rep.dim) return a.rep.dim < b.rep.dim;
  return a.key < b.key;
}

const std::vector<ClassId>& RepEngine::classes_of_dim(const Weight& d) {
  {
    std::shared_lock lock(registry_mu_);
    auto it = by_dim_.find(d);
    if (it != by_dim_.end()) return it->second;
  }
  if (static_cast<int>(d.size()) != quiver().num_vertices() || !is_nonnegative(d))
    throw ContractViolation("bad dimension vector " + to_string(d));
  long long entries = 0;
  for (const auto& arr : quiver().arrows()) entries += static_cast<long long>(d[idx(arr.target)]) * d[idx(arr.source)];
  long long tuples = ipow(q(), entries, limits_.max_tuples);
  if (tuples > limits_.max_tuples) throw ResourceError("too many matrix tuples to enumerate dim " + to_string(d));

  Rep m = space_.make_rep(d, {});
  std::set<ClassId> found;
  for_each_vector(field(), static_cast<int>(entries), [&](const std::vector<Elem>& vals) {
    size_t k = 0;
    for (auto& mat : m.maps)
      for (int r = 0; r < mat.rows(); ++r)
        for (int c = 0; c < mat.cols(); ++c) mat(r, c) = vals[k++];
    std::string raw = raw_encoding(m);
    {
      std::shared_lock lock(registry_mu_);
      auto it = by_raw_.find(raw);
      if (it != by_raw_.end()) {
        found.insert(it->second);
        return;
      }
    }
    found.insert(orbit_classify(m, raw));
  });
  std::vector<ClassId> ids(found.begin(), found.end());
  std::unique_lock lock(registry_mu_);
  std::sort(ids.begin(), ids.end(), [this](ClassId x, ClassId y) { return classes_[x].key < classes_[y].key; });
  auto [it, fresh] = by_dim_.emplace(d, ids);
  if (fresh)
    for (ClassId id : ids) {
      const auto& info = classes_[id];
      buckets_[fingerprint(info.rep.dim, info.top, info.socle)].push_back(id);
    }
  return it->second;
}

std::vector<ClassId> RepEngine::enumerate_isoclasses(const Weight& bound) {
  if (static_cast<int>(bound.size()) != quiver().num_vertices() || !is_nonnegative(bound))
    throw ContractViolation("bad dimension bound " + to_string(bound));
  std::vector<ClassId> out;
  Weight d = quiver().zero();
  while (true) {
    const auto& ids = classes_of_dim(d);
    out.insert(out.end(), ids.begin(), ids.end());
    size_t v = 0;
    while (v < d.size() && ++d[v] > bound[v]) d[v++] = 0;
    if (v == d.size()) break;
  }
  std::sort(out.begin(), out.end(), [this](ClassId x, ClassId y) { return class_less(x, y); });
  return out;
}

int RepEngine::hom_dim(ClassId m, ClassId n) {
  return hom_dims_.get_or_compute({m, n}, [&] { return space_.hom_dim(rep(m), rep(n)); });
}

int RepEngine::ext1_dim(ClassId m, ClassId n) {
  int e = hom_dim(m, n) - euler_form(dim(m), dim(n));
  if (e < 0) throw InternalInconsistency("negative Ext^1 dimension between " + key(m).text + " and " + key(n).text);
  return e;
}

std::int64_t RepEngine::aut_count(ClassId m) {
  return auts_.get_or_compute(m, [&]() -> std::int64_t {
    const Rep& r = rep(m);
    auto basis = space_.hom_basis(r, r);
    long long size = ipow(q(), static_cast<long long>(basis.size()), limits_.max_hom_elements);
    if (size <= limits_.max_hom_elements) {
      std::int64_t count = 0;
      space_.for_each_in_span(basis, space_.zero_morphism(r, r), [&](const Morphism& g) {
        if (space_.is_isomorphism(g)) ++count;
      });
      return count;
    }
    // End/rad = prod_i M_{m_i}(F_{q^{d_i}}); units are the preimage of its units.
    const std::map<ClassId, int> parts = decompose(r);
    long long rad = static_cast<long long>(basis.size());
    mpz_class out = 1;
    for (const auto& [x, mult] : parts) {
      const int d = residue_degree(x);
      rad -= static_cast<long long>(mult) * mult * d;
      mpz_class qd;
      mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(q()), static_cast<unsigned long>(d));
      out *= gl_order_mpz(mult, qd);
    }
    if (rad < 0) throw InternalInconsistency("negative radical dimension for " + key(m).text);
    mpz_class qr;
    mpz_ui_pow_ui(qr.get_mpz_t(), static_cast<unsigned long>(q()), static_cast<unsigned long>(rad));
    out *= qr;
    if (!out.fits_slong_p()) throw ResourceError("|Aut(" + key(m).text + ")| overflows 64 bits");
    return out.get_si();
  });
}

int RepEngine::residue_degree(ClassId x) {
  return residue_degrees_.get_or_compute(x, [&] {
    // End X is local, so its radical is the set of nilpotent elements.
    const Rep& r = rep(x);
    auto basis = space_.hom_basis(r, r);
    const int k = static_cast<int>(basis.size());
    if (ipow(q(), k, limits_.max_hom_elements) > limits_.max_hom_elements)
      throw ResourceError("End(" + key(x).text + ") too large to enumerate");
    const int n = total(r.dim);
    long long nilpotent = 0;
    space_.for_each_in_span(basis, space_.zero_morphism(r, r), [&](const Morphism& g) {
      if (space_.is_zero(power(space_, g, n))) ++nilpotent;
    });
    int rad = 0;
    for (long long c = nilpotent; c > 1; c /= q()) ++rad;
    if (ipow(q(), rad, nilpotent) != nilpotent) throw InternalInconsistency(key(x).text + " is not indecomposable");
    return k - rad;
  });
}

HallTable RepEngine::compute_hall_table(ClassId l) {
  const Rep& r = rep(l);
  HallTable t;
  space_.for_each_subrep(r, [&](const SubspaceTuple& sub) {
    ClassId n = classify(space_.subrep(r, sub));
    ClassId m = classify(space_.quotient(r, sub));
    ++t.counts[{m, n}];
  });
  ++counters_.hall_tables_computed;
  counters_.hall_numbers_computed += static_cast<long long>(t.counts.size());
  return t;
}

const HallTable& RepEngine::hall_table(ClassId l) {
  return hall_tables_.get_or_compute(l, [&] {
    if (cache_) {
      if (auto hit = cache_->lookup(key(l).text)) {
        HallTable t;
        for (const auto& e : *hit) t.counts[{intern_key({e.quotient}), intern_key({e.sub})}] = e.count;
        ++counters_.hall_tables_from_cache;
        return t;
      }
    }
    HallTable t = compute_hall_table(l);
    if (cache_) {
      std::vector<HallCache::Entry> entries;
      for (const auto& [mn, g] : t.counts) entries.push_back({key(mn.first).text, key(mn.second).text, g});
      std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
        return std::tie(x.quotient, x.sub) < std::tie(y.quotient, y.sub);
      });
      cache_->store(key(l).text, entries);
    }
    return t;
  });
}

std::int64_t RepEngine::hall_number(ClassId l, ClassId m, ClassId n) {
  if (dim(m) + dim(n) != dim(l)) return 0;
  if (hall_tables_.find(l) || orbit_keyed(dim(l))) return hall_table(l).get(m, n);
  return direct_hall_numbers_.get_or_compute({l, m, n}, [&] {
    const Rep& r = rep(l);
    std::int64_t count = 0;
    space_.for_each_subrep(r, dim(n), [&](const SubspaceTuple& sub) {
      if (classify(space_.subrep(r, sub)) == n && classify(space_.quotient(r, sub)) == m) ++count;
    });
    return count;
  });
}

const std::map<ClassId, std::int64_t>& RepEngine::extension_middles(ClassId m, ClassId n) {
  return extension_middles_.get_or_compute({m, n}, [&] {
    // Middle terms L_a = [[N_a, xi_a], [0, M_a]] for cocycles xi in
    // prod_a Hom(M_s, N_t), modulo coboundaries N_a f_s - f_t M_a.
    const Quiver& qv = quiver();
    const Rep rm = rep(m), rn = rep(n);
    const Field& f = field();
    std::vector<int> offset(idx(qv.num_arrows()) + 1, 0);
    for (int a = 0; a < qv.num_arrows(); ++a) {
      const auto& arr = qv.arrows()[idx(a)];
      offset[idx(a + 1)] = offset[idx(a)] + rn.dim[idx(arr.target)] * rm.dim[idx(arr.source)];
    }
    const int zdim = offset.back();
    std::vector<std::vector<Elem>> rows;
    for (int i = 0; i < qv.num_vertices(); ++i)
      for (int r = 0; r < rn.dim[idx(i)]; ++r)
        for (int c = 0; c < rm.dim[idx(i)]; ++c) {
          Matrix e(rn.dim[idx(i)], rm.dim[idx(i)]);
          e(r, c) = 1;
          std::vector<Elem> row(idx(zdim), 0);
          for (int a = 0; a < qv.num_arrows(); ++a) {
            const auto& arr = qv.arrows()[idx(a)];
            Matrix d(rn.dim[idx(arr.target)], rm.dim[idx(arr.source)]);
            if (arr.source == i) d = add(f, d, multiply(f, rn.maps[idx(a)], e));
            if (arr.target == i) d = subtract(f, d, multiply(f, e, rm.maps[idx(a)]));
            std::copy(d.data().begin(), d.data().end(), row.begin() + offset[idx(a)]);
          }
          rows.push_back(std::move(row));
        }
    Matrix spanning(static_cast<int>(rows.size()), zdim);
    for (size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < zdim; ++c) spanning(static_cast<int>(r), c) = rows[r][idx(c)];
    const Subspace boundaries(f, spanning);
    const std::vector<int> free = boundaries.complement_positions();
    if (static_cast<int>(free.size()) != ext1_dim(m, n))
      throw InternalInconsistency("Ext^1 dimension mismatch for " + key(m).text + ", " + key(n).text);
    if (ipow(q(), static_cast<long long>(free.size()), limits_.max_tuples) > limits_.max_tuples)
      throw ResourceError("Ext^1 too large to enumerate");

    std::map<ClassId, std::int64_t> out;
    for_each_vector(f, static_cast<int>(free.size()), [&](const std::vector<Elem>& coeffs) {
      std::vector<Elem> xi(idx(zdim), 0);
      for (size_t j = 0; j < free.size(); ++j) xi[idx(free[j])] = coeffs[j];
      Rep l;
      l.dim = rn.dim + rm.dim;
      for (int a = 0; a < qv.num_arrows(); ++a) {
        const auto& arr = qv.arrows()[idx(a)];
        const int nt = rn.dim[idx(arr.target)], ns = rn.dim[idx(arr.source)];
        const int mt = rm.dim[idx(arr.target)], ms = rm.dim[idx(arr.source)];
        Matrix x(nt, ms);
        for (int r = 0; r < nt; ++r)
          for (int c = 0; c < ms; ++c) x(r, c) = xi[idx(offset[idx(a)] + r * ms + c)];
        Matrix big(nt + mt, ns + ms);
        for (int r = 0; r < nt; ++r)
          for (int c = 0; c < ns; ++c) big(r, c) = rn.maps[idx(a)](r, c);
        for (int r = 0; r < nt; ++r)
          for (int c = 0; c < ms; ++c) big(r, ns + c) = x(r, c);
        for (int r = 0; r < mt; ++r)
          for (int c = 0; c < ms; ++c) big(nt + r, ns + c) = rm.maps[idx(a)](r, c);
        l.maps.push_back(std::move(big));
      }
      ++out[classify(l)];
    });
    return out;
  });
}

std::int64_t RepEngine::ext_count_middle(ClassId m, ClassId n, ClassId l) {
  std::int64_t g = hall_number(l, m, n);
  if (g == 0) return 0;
  mpz_class num = mpz_class(static_cast<long>(g)) * aut_count(m) * aut_count(n);
  mpz_class qp;
  mpz_ui_pow_ui(qp.get_mpz_t(), static_cast<unsigned long>(q()), static_cast<unsigned long>(hom_dim(m, n)));
  num *= qp;
  mpz_class den = static_cast<long>(aut_count(l));
  if (num % den != 0)
    throw InternalInconsistency("Riedtmann-Peng quotient not integral for L=" + key(l).text);
  mpz_class r = num / den;
  if (!r.fits_slong_p()) throw ResourceError("Ext count overflows 64 bits");
  return r.get_si();
}

std::int64_t RepEngine::triple_hall_number(ClassId l, ClassId x, ClassId y, ClassId z) {
  if (dim(x) + dim(y) + dim(z) != dim(l)) return 0;
  std::int64_t s = 0;
  for (const auto& [mn, g] : hall_table(l).counts)
    if (mn.second == z) s += g * hall_number(mn.first, x, y);
  return s;
}

Resolution RepEngine::min_proj_res(const Rep& m) const {
  const Field& f = field();
  const int nv = quiver().num_vertices();
  auto rad = space_.radical(m);
  Resolution res;
  res.cover_mult = quiver().zero();
  // Generators: unit vectors at non-pivot positions of the radical, a basis of the top.
  std::vector<std::pair<int, int>> gens;  // (vertex, coordinate)
  for (int i = 0; i < nv; ++i)
    for (int c : rad[idx(i)].complement_positions()) {
      gens.emplace_back(i, c);
      ++res.cover_mult[idx(i)];
    }
  // P = sum over generators of P_{vertex}, in generator order.
  Rep p = space_.zero_rep();
  for (const auto& [i, c] : gens) p = space_.direct_sum(p, space_.projective(i));
  res.cover = p;

  // pi: the path u out of generator vertex i maps to M_u(e_c).
  Morphism pi = space_.zero_morphism(p, m);
  std::vector<int> offset(idx(nv), 0);
  for (const auto& [i, c] : gens) {
    for (int j = 0; j < nv; ++j) {
      const auto& ps = quiver().paths(i, j);
      for (size_t k = 0; k < ps.size(); ++k) {
        std::vector<Elem> v(idx(m.dim[idx(i)]), 0);
        v[idx(c)] = 1;
        for (int a : ps[k]) {
          const Matrix& mat = m.maps[idx(a)];
          std::vector<Elem> w(idx(mat.rows()), 0);
          for (int r = 0; r < mat.rows(); ++r)
            for (int cc = 0; cc < mat.cols(); ++cc) w[idx(r)] = f.add(w[idx(r)], f.mul(mat(r, cc), v[idx(cc)]));
          v = std::move(w);
        }
        for (int r = 0; r < m.dim[idx(j)]; ++r) pi.comps[idx(j)](r, offset[idx(j)] + static_cast<int>(k)) = v[idx(r)];
      }
      offset[idx(j)] += static_cast<int>(ps.size());
    }
  }
  if (!space_.is_morphism(p, m, pi)) throw InternalInconsistency("projective cover map is not a morphism");
  res.cover_map = pi;
  auto ker = space_.kernel(p, pi);
  res.syzygy = space_.subrep(p, ker);
  res.inclusion = space_.inclusion(p, ker);
  if (!space_.is_projective(res.syzygy)) throw InternalInconsistency("syzygy is not projective");
  res.syzygy_mult = space_.top_dim(res.syzygy);
  return res;
}

const Resolution& RepEngine::resolution(ClassId m) {
  return resolutions_.get_or_compute(m, [&] { return min_proj_res(rep(m)); });
}

const std::map<std::pair<ClassId, ClassId>, std::int64_t>& RepEngine::kernel_cokernel_table(ClassId a, ClassId b) {
  return kc_tables_.get_or_compute({a, b}, [&] {
    const Rep& ra = rep(a);
    const Rep& rb = rep(b);
    auto basis = space_.hom_basis(ra, rb);
    long long size = ipow(q(), static_cast<long long>(basis.size()), limits_.max_hom_elements);
    if (size > limits_.max_hom_elements) throw ResourceError("Hom space too large to enumerate");
    std::map<std::pair<ClassId, ClassId>, std::int64_t> t;
    space_.for_each_in_span(basis, space_.zero_morphism(ra, rb), [&](const Morphism& g) {
      ClassId x = classify(space_.subrep(ra, space_.kernel(ra, g)));
      ClassId y = classify(space_.quotient(rb, space_.image(rb, g)));
      ++t[{x, y}];
    });
    return t;
  });
}

std::int64_t RepEngine::exact_pair_formula(ClassId a, ClassId b, ClassId x, ClassId y) {
  std::int64_t s = 0;
  for (const auto& [ln, g] : hall_table(a).counts) {
    if (ln.second != x) continue;
    ClassId l = ln.first;
    std::int64_t h = hall_number(b, y, l);
    if (h) s += aut_count(l) * g * h;
  }
  return s;
}

ExactPairCount RepEngine::exact_pair_count(ClassId a, ClassId b, ClassId x, ClassId y) {
  const auto& t = kernel_cokernel_table(a, b);
  auto it = t.find({x, y});
  std::int64_t xhy = it == t.end() ? 0 : it->second;
  std::int64_t w = aut_count(x) * aut_count(y) * xhy;
  std::int64_t formula = exact_pair_formula(a, b, x, y);
  if (xhy != formula)
    throw InternalInconsistency("exact-pair count mismatch for A=" + key(a).text + ", B=" + key(b).text + ": enumeration " +
                                std::to_string(xhy) + " vs Hall sum " + std::to_string(formula));
  return {w, xhy};
}

}  // namespace hallbridge
