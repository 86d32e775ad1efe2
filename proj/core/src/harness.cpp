#include "hallbridge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "hallbridge/hall_cache.hpp"

namespace hallbridge {

using nlohmann::json;

namespace {

size_t idx(int i) { return static_cast<size_t>(i); }

const std::vector<std::string> kSuites = {"assoc", "counting", "green",  "pairing", "lemma26", "lemma28",
                                          "lemma31", "lemma32",  "main",  "embed",   "double"};

const std::vector<std::string> kAuditSuites = {"green", "pairing", "main"};

Weight cap(const Weight& w, int c) {
  Weight out = w;
  for (auto& x : out) x = std::min(x, c);
  return out;
}

// Every weight 0 <= w <= bound, in lexicographic order.
std::vector<Weight> weights_below(const Weight& bound) {
  std::vector<Weight> out;
  Weight w(bound.size(), 0);
  while (true) {
    out.push_back(w);
    size_t v = 0;
    while (v < w.size() && ++w[v] > bound[v]) w[v++] = 0;
    if (v == w.size()) break;
  }
  return out;
}

// K-window used for pair suites: 0 and the unit vectors.
std::vector<Weight> unit_window(const Quiver& q) {
  std::vector<Weight> out = {q.zero()};
  for (int i = 0; i < q.num_vertices(); ++i) out.push_back(q.unit(i));
  return out;
}

// The full window [-1, 1]^n.
std::vector<Weight> cube_window(const Quiver& q) {
  std::vector<Weight> out;
  Weight w(idx(q.num_vertices()), -1);
  while (true) {
    out.push_back(w);
    size_t v = 0;
    while (v < w.size() && ++w[v] > 1) w[v++] = -1;
    if (v == w.size()) break;
  }
  return out;
}

json weight_json(const Weight& w) { return json(w); }

std::string basis_text(RepEngine& e, const HallBasis& b) {
  std::string s = "[" + e.key(b.m).text + "]";
  if (!is_zero(b.alpha)) s += "K(" + to_string(b.alpha) + ")";
  return s;
}

std::string c2_text(RepEngine& e, const C2Class& c) {
  return "C(" + e.key(c.m).text + ")+C*(" + e.key(c.n).text + ")+K(" + to_string(c.p) + ")+K*(" + to_string(c.q) + ")";
}

std::string mono_text(RepEngine& e, const NormalMonomial& m) {
  return "(" + to_string(m.alpha) + "|" + to_string(m.beta) + "|" + e.key(m.x).text + "|" + e.key(m.y).text + ")";
}

std::string matrix_text(const Matrix& m) {
  std::string s;
  for (int r = 0; r < m.rows(); ++r) {
    if (r) s += '/';
    for (int c = 0; c < m.cols(); ++c) {
      if (c) s += '.';
      s += std::to_string(m(r, c));
    }
  }
  return s;
}

std::string complex_text(const Complex2& x) {
  std::string s;
  for (int i = 0; i < 2; ++i) {
    s += "c" + std::to_string(i) + "=" + to_string(x.c[idx(i)].dim) + ";";
    for (const auto& m : x.c[idx(i)].maps) s += matrix_text(m) + ";";
  }
  for (int i = 0; i < 2; ++i) {
    s += "d" + std::to_string(i) + "=";
    for (const auto& m : x.d[idx(i)].comps) s += matrix_text(m) + ";";
  }
  return s;
}

using C2Element = Combination<C2Class>;

json c2_json(RepEngine& e, const C2Element& x) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [c, s] : x) rows.emplace_back(c2_text(e, c), s.to_string());
  std::sort(rows.begin(), rows.end());
  json out = json::array();
  for (auto& [k, s] : rows) out.push_back({{"class", k}, {"coeff", s}});
  return out;
}

struct Outcome {
  bool pass = false;
  json lhs;
  json rhs;
};

struct Task {
  std::string name;
  std::string instance;
  std::function<Outcome()> fn;
};

template <class T, class Ser>
Outcome compare(const T& l, const T& r, Ser&& ser) {
  Outcome o;
  o.pass = l == r;
  if (!o.pass) {
    o.lhs = ser(l);
    o.rhs = ser(r);
  }
  return o;
}

Outcome compare_ints(long long l, long long r) {
  Outcome o;
  o.pass = l == r;
  if (!o.pass) {
    o.lhs = l;
    o.rhs = r;
  }
  return o;
}

std::vector<Check> run_tasks(std::vector<Task>& tasks, int jobs) {
  std::vector<Check> out(tasks.size());
  parallel_for(tasks.size(), jobs, [&](size_t i) {
    Check& c = out[i];
    c.name = tasks[i].name;
    c.instance = tasks[i].instance;
    try {
      Outcome o = tasks[i].fn();
      c.pass = o.pass;
      c.lhs = std::move(o.lhs);
      c.rhs = std::move(o.rhs);
    } catch (const std::exception& e) {
      c.pass = false;
      c.lhs = json{{"error", e.what()}};
      c.rhs = nullptr;
    }
  });
  return out;
}

mpz_class power(int q, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

// -- configuration -------------------------------------------------------------

Weight RunConfig::pair_bound() const { return pair_dim ? *pair_dim : cap(max_dim, 1); }

const std::vector<std::string>& suite_registry() { return kSuites; }

void validate_config(const RunConfig& cfg) {
  if (cfg.quiver_path.empty()) throw UsageError("a quiver file is required (--quiver)");
  if (cfg.q < 2 || !is_prime(cfg.q)) throw UsageError("q must be prime, got " + std::to_string(cfg.q));
  if (!is_nonnegative(cfg.max_dim)) throw UsageError("max-dim must be componentwise nonnegative");
  if (cfg.pair_dim && (!is_nonnegative(*cfg.pair_dim) || cfg.pair_dim->size() != cfg.max_dim.size()))
    throw UsageError("pair-dim must be a nonnegative vector of the same length as max-dim");
  if (cfg.jobs < 1) throw UsageError("jobs must be positive");
  for (const auto& s : cfg.suites)
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) throw UsageError("unknown suite '" + s + "'");
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

bool Report::all_pass() const {
  for (const auto& s : suites)
    if (s.failures()) return false;
  if (audit && audit->verdict == "fail") return false;
  return true;
}

std::size_t Report::check_count() const {
  std::size_t n = 0;
  for (const auto& s : suites) n += s.checks.size();
  return n;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const size_t workers = std::min<size_t>(static_cast<size_t>(std::max(jobs, 1)), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

// -- workbench ------------------------------------------------------------------

Workbench::Workbench(Quiver quiver, int q, Conventions conventions, const std::string& cache_dir)
    : engine_(std::make_shared<RepEngine>(std::move(quiver), q)) {
  if (!cache_dir.empty()) {
    try {
      engine_->set_cache(std::make_shared<HallCache>(cache_dir, engine_->quiver().fingerprint(), q));
    } catch (const std::exception& e) {
      std::cerr << "warning: Hall-number cache unavailable (" << e.what() << "); recomputing\n";
    }
  }
  complexes_ = std::make_shared<ComplexSpace>(*engine_);
  hall_ = std::make_unique<HallAlgebra>(*engine_, conventions);
  double_ = std::make_unique<DrinfeldDouble>(*hall_);
  dh_ = std::make_unique<BridgelandAlgebra>(*complexes_, *hall_);
}

Workbench::Workbench(Workbench& base, Conventions conventions) : engine_(base.engine_), complexes_(base.complexes_) {
  hall_ = std::make_unique<HallAlgebra>(*engine_, conventions);
  double_ = std::make_unique<DrinfeldDouble>(*hall_);
  dh_ = std::make_unique<BridgelandAlgebra>(*complexes_, *hall_);
}

SuiteReport Workbench::run(const std::string& suite, const Weight& max_dim, const Weight& pair_dim, int jobs) {
  RepEngine& e = *engine_;
  HallAlgebra& h = *hall_;
  ComplexSpace& cs = *complexes_;
  BridgelandAlgebra& dh = *dh_;
  DrinfeldDouble& dd = *double_;
  const Quiver& quiver = e.quiver();
  const Weight zero = quiver.zero();
  const ClassId o = e.zero_class();
  auto k = [&](ClassId id) { return e.key(id).text; };
  auto tensor_ser = [&](const TensorElement& x) { return to_json(e, x); };
  auto dh_ser = [&](const DHElement& x) { return to_json(e, x); };
  auto dbl_ser = [&](const DoubleElement& x) { return to_json(e, x); };
  auto c2_ser = [&](const C2Element& x) { return c2_json(e, x); };

  // Enumerate sequentially so that class ids are assigned deterministically.
  const std::vector<ClassId> objects = e.enumerate_isoclasses(max_dim);
  const std::vector<ClassId> pair_objects = e.enumerate_isoclasses(pair_dim);

  std::vector<Task> tasks;

  if (suite == "assoc") {
    for (ClassId l : objects) {
      const Weight& dl = e.dim(l);
      for (const auto& dx : weights_below(dl))
        for (const auto& dy : weights_below(dl - dx))
          for (ClassId x : e.classes_of_dim(dx))
            for (ClassId y : e.classes_of_dim(dy))
              for (ClassId z : e.classes_of_dim(dl - dx - dy))
                tasks.push_back({"associativity", "L=" + k(l) + " X=" + k(x) + " Y=" + k(y) + " Z=" + k(z), [&e, l, x, y, z] {
                                   // sum_M g^M_{XY} g^L_{MZ} against sum_N g^L_{XN} g^N_{YZ}
                                   long long right = 0;
                                   for (ClassId n : e.classes_of_dim(e.dim(y) + e.dim(z))) right += e.hall_number(l, x, n) * e.hall_number(n, y, z);
                                   return compare_ints(e.triple_hall_number(l, x, y, z), right);
                                 }});
    }
  } else if (suite == "counting") {
    // Every pair: Ext^1 classes binned by middle term against Riedtmann-Peng.
    for (ClassId m : objects)
      for (ClassId n : objects)
        tasks.push_back({"ext_by_middle", "M=" + k(m) + " N=" + k(n), [&e, m, n] {
                           Outcome o;
                           json direct = json::object(), formula = json::object();
                           mpz_class sum = 0;
                           for (const auto& [l, count] : e.extension_middles(m, n)) {
                             const std::int64_t rp = e.ext_count_middle(m, n, l);
                             direct[e.key(l).text] = count;
                             formula[e.key(l).text] = rp;
                             sum += rp;
                           }
                           o.pass = direct == formula && sum == power(e.q(), e.ext1_dim(m, n));
                           if (!o.pass) {
                             o.lhs = direct;
                             o.rhs = formula;
                           }
                           return o;
                         }});
    // Pairs with dim M + dim N <= max_dim: the sum also runs over every
    // enumerated class of the middle dimension.
    for (ClassId m : objects)
      for (ClassId n : objects) {
        if (!dominated_by(e.dim(m) + e.dim(n), max_dim)) continue;
        tasks.push_back({"ext_total", "M=" + k(m) + " N=" + k(n), [&e, m, n] {
                           mpz_class sum = 0;
                           for (ClassId l : e.classes_of_dim(e.dim(m) + e.dim(n))) sum += e.ext_count_middle(m, n, l);
                           mpz_class expect = power(e.q(), e.ext1_dim(m, n));
                           Outcome o;
                           o.pass = sum == expect;
                           if (!o.pass) {
                             o.lhs = sum.get_str();
                             o.rhs = expect.get_str();
                           }
                           return o;
                         }});
      }
    for (ClassId a : objects)
      for (ClassId b : objects)
        for (ClassId x : e.enumerate_isoclasses(e.dim(a))) {
          Weight dy = e.dim(b) - e.dim(a) + e.dim(x);
          if (!is_nonnegative(dy) || !dominated_by(dy, e.dim(b))) continue;
          for (ClassId y : e.classes_of_dim(dy))
            tasks.push_back({"exact_pair", "A=" + k(a) + " B=" + k(b) + " X=" + k(x) + " Y=" + k(y), [&e, a, b, x, y] {
                               const auto& table = e.kernel_cokernel_table(a, b);
                               auto it = table.find({x, y});
                               long long direct = it == table.end() ? 0 : it->second;
                               return compare_ints(direct, e.exact_pair_formula(a, b, x, y));
                             }});
        }
  } else if (suite == "green") {
    for (ClassId x : pair_objects)
      for (ClassId y : pair_objects) {
        const std::string inst = "x=[" + k(x) + "] y=[" + k(y) + "]";
        tasks.push_back({"reduced", inst, [&h, x, y, tensor_ser] {
                           HallElement xe(h.basis(x)), ye(h.basis(y));
                           return compare(h.reduced_coproduct(h.multiply(xe, ye)),
                                          h.tensor_multiply(h.reduced_coproduct(xe), h.reduced_coproduct(ye), true), tensor_ser);
                         }});
        tasks.push_back({"extended", inst, [&h, x, y, tensor_ser] {
                           HallElement xe(h.basis(x)), ye(h.basis(y));
                           return compare(h.coproduct(h.multiply(xe, ye)), h.tensor_multiply(h.coproduct(xe), h.coproduct(ye), false),
                                          tensor_ser);
                         }});
      }
    for (ClassId l : objects)
      tasks.push_back({"coassociativity", "L=" + k(l), [&h, &e, l] {
                         auto left = h.coassoc_left(h.basis(l)), right = h.coassoc_right(h.basis(l));
                         auto ser = [&e](const Combination<HallAlgebra::Triple>& t) {
                           std::vector<std::pair<std::string, std::string>> rows;
                           for (const auto& [key, c] : t)
                             rows.emplace_back(basis_text(e, std::get<0>(key)) + "|" + basis_text(e, std::get<1>(key)) + "|" +
                                                   basis_text(e, std::get<2>(key)),
                                               c.to_string());
                           std::sort(rows.begin(), rows.end());
                           return json(rows);
                         };
                         return compare(left, right, ser);
                       }});
  } else if (suite == "pairing") {
    std::vector<HallBasis> basis;
    for (ClassId m : pair_objects)
      for (const auto& a : unit_window(quiver)) basis.push_back(h.basis(m, a));
    for (const auto& x : basis)
      for (const auto& y : basis)
        for (ClassId zm : e.classes_of_dim(e.dim(x.m) + e.dim(y.m)))
          for (const auto& za : unit_window(quiver)) {
            HallBasis z = h.basis(zm, za);
            tasks.push_back({"multiplicativity", "x=" + basis_text(e, x) + " y=" + basis_text(e, y) + " z=" + basis_text(e, z), [&h, x, y, z] {
                               Scalar l = h.pairing(h.multiply(HallElement(x), HallElement(y)), HallElement(z));
                               Scalar r = h.tensor_pairing(TensorElement({x, y}), h.coproduct(z));
                               return compare(l, r, [](const Scalar& s) { return s.to_string(); });
                             }});
          }
    for (ClassId m : pair_objects)
      tasks.push_back({"gram_rank", "M=" + k(m), [&h, &quiver, m] {
                         auto window = cube_window(quiver);
                         std::vector<std::vector<Scalar>> rows;
                         for (const auto& a : window) {
                           std::vector<Scalar> row;
                           for (const auto& b : window) row.push_back(h.pairing(h.basis(m, a), h.basis(m, b)));
                           rows.push_back(std::move(row));
                         }
                         return compare_ints(rank(rows), static_cast<long long>(window.size()));
                       }});
  } else if (suite == "lemma26") {
    auto classes = cs.enumerate_classes(pair_dim);
    auto prod = [&cs](const C2Class& x, const C2Class& y) {
      C2Element out;
      for (const auto& [c, s] : cs.twisted_product(x, y)) out.add(c, s);
      return out;
    };
    auto vp = [&e](long long n) { return Scalar::v_pow(e.q(), n); };
    for (int i = 0; i < quiver.num_vertices(); ++i) {
      const Weight u = quiver.unit(i);
      const Weight p = quiver.projective_dim(i);
      const C2Class kp{o, o, u, zero}, ks{o, o, zero, u};
      const std::string pi = "P=P" + quiver.vertex_labels()[idx(i)];
      for (const auto& m : classes) {
        C2Class with_k = m, with_ks = m;
        with_k.p += u;
        with_ks.q += u;
        const Weight mh = cs.class_of(m);
        const std::string inst = pi + " M=" + c2_text(e, m);
        tasks.push_back({"K_P*M", inst, [=, &e] { return compare(prod(kp, m), vp(e.euler_form(p, mh)) * C2Element(with_k), c2_ser); }});
        tasks.push_back({"M*K_P", inst, [=, &e] { return compare(prod(m, kp), vp(-e.euler_form(mh, p)) * C2Element(with_k), c2_ser); }});
        tasks.push_back({"K*_P*M", inst, [=, &e] { return compare(prod(ks, m), vp(-e.euler_form(p, mh)) * C2Element(with_ks), c2_ser); }});
        tasks.push_back({"M*K*_P", inst, [=, &e] { return compare(prod(m, ks), vp(e.euler_form(mh, p)) * C2Element(with_ks), c2_ser); }});
        // The commutation exponent is the symmetric form.
        tasks.push_back({"commute_K_P", inst, [=, &e] { return compare(prod(kp, m), vp(e.sym_euler(p, mh)) * prod(m, kp), c2_ser); }});
        tasks.push_back({"commute_K*_P", inst, [=, &e] { return compare(prod(ks, m), vp(-e.sym_euler(p, mh)) * prod(m, ks), c2_ser); }});
      }
      for (int j = 0; j < quiver.num_vertices(); ++j) {
        const Weight v = quiver.unit(j);
        const C2Class kq{o, o, v, zero}, kqs{o, o, zero, v};
        const std::string inst = pi + " Q=P" + quiver.vertex_labels()[idx(j)];
        tasks.push_back({"K_P*K_Q", inst, [=, &e] { return compare(prod(kp, kq), C2Element(C2Class{o, o, u + v, zero}), c2_ser); }});
        tasks.push_back({"K_P*K*_Q", inst, [=, &e] { return compare(prod(kp, kqs), C2Element(C2Class{o, o, u, v}), c2_ser); }});
        tasks.push_back({"[K_P,K_Q]", inst, [=, &e] { return compare(prod(kp, kq), prod(kq, kp), c2_ser); }});
        tasks.push_back({"[K_P,K*_Q]", inst, [=, &e] { return compare(prod(kp, kqs), prod(kqs, kp), c2_ser); }});
        tasks.push_back({"[K*_P,K*_Q]", inst, [=, &e] { return compare(prod(ks, kqs), prod(kqs, ks), c2_ser); }});
      }
    }
  } else if (suite == "lemma28") {
    std::vector<Complex2> complexes;
    cs.for_each_complex(max_dim, [&](const Complex2& x) { complexes.push_back(x); });
    for (const auto& x : complexes)
      tasks.push_back({"decompose", complex_text(x), [&cs, &e, x, o] {
                         C2Class cls = cs.decompose(x);
                         auto [h0, h1] = cs.homology(x);
                         Outcome out;
                         const bool acyclic_shape = !(h0 == o && h1 == o) || (cls.m == o && cls.n == o);
                         out.pass = acyclic_shape && cs.isomorphic(x, cs.assemble(cls));
                         if (!out.pass) {
                           out.lhs = complex_text(x);
                           out.rhs = c2_text(e, cls);
                         }
                         return out;
                       }});
    for (const auto& cls : cs.enumerate_classes(max_dim))
      tasks.push_back({"reassemble", c2_text(e, cls), [&cs, &e, cls] {
                         return compare(cs.decompose(cs.assemble(cls)), cls, [&e](const C2Class& c) { return c2_text(e, c); });
                       }});
  } else if (suite == "lemma31") {
    std::vector<Weight> mults = {zero};
    for (int i = 0; i < quiver.num_vertices(); ++i) mults.push_back(quiver.unit(i));
    for (ClassId x : pair_objects)
      for (ClassId y : pair_objects)
        for (const auto& t : mults)
          for (const auto& w : mults) {
            const std::string inst = "X=" + k(x) + " Y=" + k(y) + " T=" + to_string(t) + " W=" + to_string(w);
            tasks.push_back({"normalize", inst, [&cs, &dh, &e, x, y, t, w, o, c2_ser] {
                               // [K_T + K*_W] * [C_X + C*_Y] = c [full], so [full] = c^{-1} K_T K*_W [C_X + C*_Y].
                               C2Class acyc{o, o, t, w}, plain = cs.plain(x, y), full{x, y, t, w};
                               C2Element prod;
                               for (const auto& [c, s] : cs.twisted_product(acyc, plain)) prod.add(c, s);
                               Outcome out;
                               auto [s, m] = dh.normalize(full);
                               const RepSpace& sp = e.space();
                               NormalMonomial expect{sp.projective_class(t), sp.projective_class(w), x, y};
                               out.pass = prod.size() == 1 && prod.begin()->first == full && m == expect &&
                                          s == prod.begin()->second.inverse();
                               if (!out.pass) {
                                 out.lhs = c2_ser(prod);
                                 out.rhs = json{{"scalar", s.to_string()}, {"monomial", mono_text(e, m)}};
                               }
                               return out;
                             }});
            tasks.push_back({"hom_count", inst, [&cs, &e, x, y, t, w, o] {
                               const RepSpace& sp = e.space();
                               const Resolution& rx = e.resolution(x);
                               const Resolution& ry = e.resolution(y);
                               Weight th = sp.projective_class(t), wh = sp.projective_class(w);
                               int expect = e.euler_form(th, rx.syzygy.dim + ry.cover.dim) + e.euler_form(wh, rx.cover.dim + ry.syzygy.dim);
                               return compare_ints(cs.hom_dim(cs.assemble({o, o, t, w}), cs.assemble(cs.plain(x, y))), expect);
                             }});
          }
  } else if (suite == "lemma32") {
    for (ClassId a : pair_objects)
      for (ClassId b : pair_objects) {
        const std::string inst = "A=" + k(a) + " B=" + k(b);
        tasks.push_back({"part1", inst, [&dh, a, b, zero, o, dh_ser] {
                           return compare(dh.lemma32(1, a, b), dh.multiply(dh.monomial(zero, zero, a, o), dh.monomial(zero, zero, o, b)), dh_ser);
                         }});
        tasks.push_back({"part2", inst, [&dh, a, b, zero, o, dh_ser] {
                           return compare(dh.lemma32(2, a, b), dh.multiply(dh.monomial(zero, zero, o, b), dh.monomial(zero, zero, a, o)), dh_ser);
                         }});
        tasks.push_back({"involution", inst, [&dh, a, b, dh_ser] {
                           return compare(dh.involution(dh.lemma32(1, a, b)), dh.lemma32(2, b, a), dh_ser);
                         }});
        tasks.push_back({"ext_c2", inst, [&cs, &e, a, b, o] {
                           ExtensionCount ext = cs.extensions(cs.plain(a, o), cs.plain(o, b));
                           mpz_class expect = power(e.q(), e.hom_dim(a, b));
                           return compare_ints(ext.total, expect.get_si());
                         }});
      }
  } else if (suite == "main") {
    for (ClassId a : pair_objects)
      for (ClassId b : pair_objects)
        for (const auto& al : unit_window(quiver))
          for (const auto& be : unit_window(quiver)) {
            HallBasis ab = h.basis(a, al), bb = h.basis(b, be);
            tasks.push_back({"commutator", "a=" + basis_text(e, ab) + " b=" + basis_text(e, bb), [&dh, ab, bb, dh_ser] {
                               MainCheck mc = dh.main_relation_check(ab, bb);
                               Outcome out;
                               out.pass = mc.equal;
                               if (!out.pass) {
                                 out.lhs = json{{"first_principles", dh_ser(mc.lhs)}};
                                 out.rhs = json{{"first_principles", dh_ser(mc.rhs)}};
                                 if (mc.lhs_closed) out.lhs["closed_form"] = dh_ser(*mc.lhs_closed);
                                 if (mc.rhs_closed) out.rhs["closed_form"] = dh_ser(*mc.rhs_closed);
                               }
                               return out;
                             }});
          }
  } else if (suite == "embed") {
    std::vector<HallBasis> basis;
    for (ClassId m : pair_objects)
      for (const auto& a : unit_window(quiver)) basis.push_back(h.basis(m, a));
    for (const auto& a : basis)
      for (const auto& b : basis) {
        const std::string inst = "a=" + basis_text(e, a) + " b=" + basis_text(e, b);
        for (Sign s : {Sign::kPlus, Sign::kMinus})
          tasks.push_back({s == Sign::kPlus ? "embed_plus" : "embed_minus", inst, [&dh, &h, a, b, s, dh_ser] {
                             return compare(dh.embed(h.multiply(HallElement(a), HallElement(b)), s), dh.multiply(dh.embed(a, s), dh.embed(b, s)),
                                            dh_ser);
                           }});
      }
    for (ClassId x : pair_objects)
      for (ClassId y : pair_objects)
        for (ClassId x2 : pair_objects)
          for (ClassId y2 : pair_objects) {
            NormalMonomial m1{zero, zero, x, y}, m2{zero, zero, x2, y2};
            tasks.push_back({"involution", mono_text(e, m1) + "*" + mono_text(e, m2), [&dh, m1, m2, dh_ser] {
                               DHElement a(m1), b(m2);
                               return compare(dh.involution(dh.multiply(a, b)), dh.multiply(dh.involution(a), dh.involution(b)), dh_ser);
                             }});
          }
    tasks.push_back({"m_expand_rank", "dim<=" + to_string(pair_dim) + " K-window=[-1,1]", [&dh, &h, &quiver, pair_objects] {
                       std::vector<HallBasis> window;
                       for (ClassId m : pair_objects)
                         for (const auto& a : cube_window(quiver)) window.push_back(h.basis(m, a));
                       return compare_ints(dh.m_expand_rank(window), static_cast<long long>(window.size() * window.size()));
                     }});
  } else if (suite == "double") {
    for (ClassId a : objects)
      for (ClassId b : objects) {
        const std::string inst = "a=[" + k(a) + "] b=[" + k(b) + "]";
        tasks.push_back({"relation", inst, [&dd, &h, a, b, dbl_ser] {
                           // normal_order throws if the recursion does not terminate.
                           CrossRelation rel = dd.cross_relation_sides(h.basis(a), h.basis(b));
                           dd.normal_order(h.basis(b), h.basis(a));
                           return compare(rel.lhs, dd.ordered_rhs(rel), dbl_ser);
                         }});
      }
    for (int i = 0; i < quiver.num_vertices(); ++i) {
      const Weight u = quiver.unit(i);
      const ClassId s = e.classify(e.space().simple(i));
      const std::string inst = "S=" + k(s);
      tasks.push_back({"commutator_simple", inst, [&dd, &h, &e, s, u, o, dbl_ser] {
                         // From the relation: S^- S^+ = S^+ S^- + (q - 1)(K^+ - K^-).
                         DoubleElement expect(DoubleMonomial{h.basis(s), h.basis(s)});
                         expect.add({h.basis(o, u), h.basis(o)}, Scalar(e.q() - 1));
                         expect.add({h.basis(o), h.basis(o, u)}, Scalar(-(e.q() - 1)));
                         return compare(dd.normal_order(h.basis(s), h.basis(s)), expect, dbl_ser);
                       }});
      tasks.push_back({"commutator_dh", inst, [&dh, &h, &e, s, u, dh_ser] {
                         DHElement plus = dh.embed(h.basis(s), Sign::kPlus), minus = dh.embed(h.basis(s), Sign::kMinus);
                         DHElement diff = dh.multiply(minus, plus) - dh.multiply(plus, minus);
                         DHElement expect = Scalar(e.q() - 1) * (dh.kclass(u, false) - dh.kclass(u, true));
                         return compare(diff, expect, dh_ser);
                       }});
    }
    std::vector<DoubleMonomial> monos;
    for (ClassId a : pair_objects)
      for (ClassId b : pair_objects) monos.push_back({h.basis(a), h.basis(b)});
    for (const auto& x : monos)
      for (const auto& y : monos)
        tasks.push_back({"structure_constants", "x=" + to_json(e, x).dump() + " y=" + to_json(e, y).dump(), [&dd, &dh, x, y, dh_ser] {
                           return compare(dh.from_double(dd.multiply(DoubleElement(x), DoubleElement(y))),
                                          dh.multiply(dh.from_double(DoubleElement(x)), dh.from_double(DoubleElement(y))), dh_ser);
                         }});
    std::vector<DoubleMonomial> gens;
    for (ClassId a : pair_objects) {
      gens.push_back({h.basis(a), h.basis(o)});
      if (a != o) gens.push_back({h.basis(o), h.basis(a)});
    }
    // Products stay within max_dim so every class met has a canonical key.
    auto fits = [&](const DoubleMonomial& x, const DoubleMonomial& y, const DoubleMonomial& z) {
      return dominated_by(e.dim(x.pos.m) + e.dim(y.pos.m) + e.dim(z.pos.m), max_dim) &&
             dominated_by(e.dim(x.neg.m) + e.dim(y.neg.m) + e.dim(z.neg.m), max_dim);
    };
    for (const auto& x : gens)
      for (const auto& y : gens)
        for (const auto& z : gens)
          if (fits(x, y, z)) tasks.push_back({"associativity", to_json(e, x).dump() + to_json(e, y).dump() + to_json(e, z).dump(), [&dd, x, y, z, dbl_ser] {
                             DoubleElement a(x), b(y), c(z);
                             return compare(dd.multiply(dd.multiply(a, b), c), dd.multiply(a, dd.multiply(b, c)), dbl_ser);
                           }});
  } else {
    throw UsageError("unknown suite '" + suite + "'");
  }

  return {suite, run_tasks(tasks, jobs)};
}

// -- runs -------------------------------------------------------------------------

namespace {

Quiver load_quiver(const std::string& path) {
  try {
    return Quiver::from_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void check_dims(const RunConfig& cfg, const Quiver& q) {
  if (cfg.max_dim.size() != idx(q.num_vertices()))
    throw UsageError("max-dim has " + std::to_string(cfg.max_dim.size()) + " entries but the quiver has " +
                     std::to_string(q.num_vertices()) + " vertices");
}

Counters read_counters(RepEngine& e) {
  const auto& c = e.counters();
  return {c.hall_tables_computed.load(), c.hall_numbers_computed.load(), c.hall_tables_from_cache.load(), c.orbit_searches.load()};
}

}  // namespace

json config_json(const RunConfig& cfg) {
  json j;
  j["quiver"] = cfg.quiver_path;
  j["q"] = cfg.q;
  j["max_dim"] = weight_json(cfg.max_dim);
  j["pair_dim"] = weight_json(cfg.pair_bound());
  j["suites"] = cfg.suites;
  j["conventions"] = to_string(cfg.conventions);
  return j;
}

Report run_suite(const RunConfig& cfg) {
  validate_config(cfg);
  Quiver quiver = load_quiver(cfg.quiver_path);
  check_dims(cfg, quiver);
  Workbench wb(std::move(quiver), cfg.q, cfg.conventions, cfg.cache_dir);
  Report r;
  r.config = config_json(cfg);
  for (const auto& s : cfg.suites) {
    auto t0 = std::chrono::steady_clock::now();
    r.suites.push_back(wb.run(s, cfg.max_dim, cfg.pair_bound(), cfg.jobs));
    r.seconds.emplace_back(s, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  r.counters = read_counters(wb.engine());
  return r;
}

AuditReport convention_audit(Workbench& base, const Weight& max_dim, int jobs) {
  AuditReport a;
  const Weight bound = cap(max_dim, 1);
  if (is_zero(bound)) {
    a.verdict = "inconclusive";
    a.diagnostic = "max-dim admits no nonzero object; no instances to discriminate conventions";
    return a;
  }
  std::vector<Conventions> all;
  for (Bracket kc : {Bracket::kSymmetric, Bracket::kAngle})
    for (Bracket pa : {Bracket::kSymmetric, Bracket::kAngle})
      for (Bracket te : {Bracket::kSymmetric, Bracket::kAngle}) all.push_back({kc, pa, te});
  std::map<std::string, std::vector<bool>> outcome;
  std::ostringstream diag;
  for (const auto& c : all) {
    Workbench wb(base, c);
    std::vector<std::pair<std::string, bool>> row;
    bool ok = true;
    for (const auto& s : kAuditSuites) {
      SuiteReport sr = wb.run(s, bound, bound, jobs);
      const bool pass = sr.failures() == 0;
      row.emplace_back(s, pass);
      ok = ok && pass;
      if (!pass) diag << to_string(c) << ": " << s << " failed " << sr.failures() << "/" << sr.checks.size() << "\n";
    }
    if (ok) a.passing.push_back(c);
    a.table.emplace_back(c, row);
  }
  // A site is indistinguishable if flipping it alone never changes an outcome.
  auto flip = [](Conventions c, int site) {
    auto other = [](Bracket b) { return b == Bracket::kAngle ? Bracket::kSymmetric : Bracket::kAngle; };
    if (site == 0) c.kcommute = other(c.kcommute);
    if (site == 1) c.pairing = other(c.pairing);
    if (site == 2) c.tensor = other(c.tensor);
    return c;
  };
  auto row_of = [&](const Conventions& c) {
    for (const auto& [cc, row] : a.table)
      if (cc == c) return row;
    return std::vector<std::pair<std::string, bool>>{};
  };
  const char* names[] = {"kcommute", "pairing", "tensor"};
  for (int site = 0; site < 3; ++site) {
    bool same = true;
    for (const auto& c : all) same = same && row_of(c) == row_of(flip(c, site));
    if (same) a.indistinguishable.push_back(names[site]);
  }
  const bool default_passes = std::find(a.passing.begin(), a.passing.end(), Conventions{}) != a.passing.end();
  if (a.passing.empty()) {
    a.verdict = "fail";
    diag << "no bracket assignment passes green, pairing and main\n";
  } else if (!default_passes) {
    a.verdict = "fail";
    diag << "the all-symmetric assignment does not pass\n";
  } else {
    a.verdict = "pass";
  }
  a.diagnostic = diag.str();
  return a;
}

AuditReport convention_audit(const RunConfig& cfg) {
  validate_config(cfg);
  Quiver quiver = load_quiver(cfg.quiver_path);
  check_dims(cfg, quiver);
  Workbench wb(std::move(quiver), cfg.q, cfg.conventions, cfg.cache_dir);
  return convention_audit(wb, cfg.max_dim, cfg.jobs);
}

// -- serialization -------------------------------------------------------------------

json to_json(const AuditReport& a) {
  json j;
  j["verdict"] = a.verdict;
  j["passing"] = json::array();
  for (const auto& c : a.passing) j["passing"].push_back(to_string(c));
  j["table"] = json::array();
  for (const auto& [c, row] : a.table) {
    json r;
    r["conventions"] = to_string(c);
    for (const auto& [s, p] : row) r[s] = p ? "pass" : "fail";
    j["table"].push_back(r);
  }
  j["indistinguishable_sites"] = a.indistinguishable;
  j["diagnostic"] = a.diagnostic;
  return j;
}

json to_json(const Report& r) {
  json j;
  j["config"] = r.config;
  j["suites"] = json::array();
  std::size_t failures = 0;
  for (const auto& s : r.suites) {
    json sj;
    sj["name"] = s.name;
    sj["checks"] = json::array();
    for (const auto& c : s.checks) {
      json cj{{"name", c.name}, {"instance", c.instance}, {"status", c.pass ? "pass" : "fail"}};
      if (!c.pass) {
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
      }
      sj["checks"].push_back(std::move(cj));
    }
    sj["passed"] = s.checks.size() - s.failures();
    sj["failed"] = s.failures();
    failures += s.failures();
    j["suites"].push_back(std::move(sj));
  }
  if (r.audit) j["convention_audit"] = to_json(*r.audit);
  j["summary"] = {{"checks", r.check_count()}, {"failed", failures}, {"status", r.all_pass() ? "pass" : "fail"}};
  return j;
}

json metadata_json(const Report& r) {
  json j;
  j["counters"] = {{"hall_tables_computed", r.counters.hall_tables_computed},
                   {"hall_numbers_computed", r.counters.hall_numbers_computed},
                   {"hall_tables_from_cache", r.counters.hall_tables_from_cache},
                   {"orbit_searches", r.counters.orbit_searches}};
  j["seconds"] = json::object();
  for (const auto& [s, t] : r.seconds) j["seconds"][s] = t;
  return j;
}

json to_json(RepEngine& e, const HallElement& x) {
  std::vector<std::tuple<std::string, Weight, std::string>> rows;
  for (const auto& [b, c] : x) rows.emplace_back(e.key(b.m).text, b.alpha, c.to_string());
  std::sort(rows.begin(), rows.end());
  json out = json::array();
  for (auto& [m, a, c] : rows) out.push_back({{"M", m}, {"alpha", a}, {"coeff", c}});
  return out;
}

json to_json(RepEngine& e, const TensorElement& x) {
  std::vector<std::tuple<std::string, Weight, std::string, Weight, std::string>> rows;
  for (const auto& [t, c] : x) rows.emplace_back(e.key(t.first.m).text, t.first.alpha, e.key(t.second.m).text, t.second.alpha, c.to_string());
  std::sort(rows.begin(), rows.end());
  json out = json::array();
  for (auto& [m, a, n, b, c] : rows)
    out.push_back({{"left", {{"M", m}, {"alpha", a}}}, {"right", {{"M", n}, {"alpha", b}}}, {"coeff", c}});
  return out;
}

json to_json(RepEngine& e, const DHElement& x) {
  std::vector<std::tuple<Weight, Weight, std::string, std::string, std::string>> rows;
  for (const auto& [m, c] : x) rows.emplace_back(m.alpha, m.beta, e.key(m.x).text, e.key(m.y).text, c.to_string());
  std::sort(rows.begin(), rows.end());
  json out = json::array();
  for (auto& [a, b, xk, yk, c] : rows) out.push_back({{"alpha", a}, {"beta", b}, {"X", xk}, {"Y", yk}, {"coeff", c}});
  return out;
}

json to_json(RepEngine& e, const DoubleMonomial& m) {
  return {{"pos", {{"M", e.key(m.pos.m).text}, {"alpha", m.pos.alpha}}}, {"neg", {{"M", e.key(m.neg.m).text}, {"alpha", m.neg.alpha}}}};
}

json to_json(RepEngine& e, const DoubleElement& x) {
  std::vector<std::pair<std::string, json>> rows;
  for (const auto& [m, c] : x) {
    json j = to_json(e, m);
    j["coeff"] = c.to_string();
    rows.emplace_back(to_json(e, m).dump(), std::move(j));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  json out = json::array();
  for (auto& [k, j] : rows) out.push_back(std::move(j));
  return out;
}

json double_constants(Workbench& wb, const Weight& bound) {
  RepEngine& e = wb.engine();
  HallAlgebra& h = wb.hall();
  std::vector<ClassId> objects = e.enumerate_isoclasses(bound);
  std::vector<DoubleMonomial> monos;
  for (ClassId a : objects)
    for (ClassId b : objects) monos.push_back({h.basis(a), h.basis(b)});
  json out = json::array();
  for (const auto& x : monos)
    for (const auto& y : monos)
      out.push_back({{"lhs", to_json(e, x)}, {"rhs", to_json(e, y)}, {"product", to_json(e, wb.dbl().multiply(DoubleElement(x), DoubleElement(y)))}});
  return out;
}

}  // namespace hallbridge
