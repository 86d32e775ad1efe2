#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hallbridge/memo.hpp"
#include "hallbridge/rep.hpp"

namespace hallbridge {

class HallCache;

/// Dense handle of an isomorphism class inside one RepEngine.
using ClassId = std::uint32_t;

/// Canonical text of a class. Dimensions small enough for an orbit search use
/// the orbit-minimal matrix tuple, e.g. "d=1,1;a=1"; larger ones list their
/// indecomposable summands, e.g. "d=4,4;sum=[d=0,1;a=]^2[d=1,1;a=1]^3".
/// Which form is used depends on the dimension vector only, so equal keys
/// <=> isomorphic representations.
struct IsoKey {
  std::string text;

  friend bool operator==(const IsoKey&, const IsoKey&) = default;
  friend auto operator<=>(const IsoKey&, const IsoKey&) = default;
};

struct Resolution {
  Rep cover;               // P_M
  Rep syzygy;              // Omega_M
  Morphism inclusion;      // delta_M : Omega_M -> P_M
  Morphism cover_map;      // P_M -> M
  Weight cover_mult;       // P_M = sum_i P_i^{cover_mult_i}
  Weight syzygy_mult;      // Omega_M = sum_i P_i^{syzygy_mult_i}
};

/// Hall numbers g^L_{MN} of one L, over all (quotient M, sub N).
struct HallTable {
  std::map<std::pair<ClassId, ClassId>, std::int64_t> counts;

  std::int64_t get(ClassId m, ClassId n) const {
    auto it = counts.find({m, n});
    return it == counts.end() ? 0 : it->second;
  }
};

struct ExactPairCount {
  std::int64_t w;    // |W_{AB}^{XY}| = a_X a_Y |_X Hom(A,B)_Y|
  std::int64_t xhy;  // number of g: A -> B with ker g = X, coker g = Y
};

struct EngineLimits {
  /// Largest number of matrix tuples enumerated for one dimension vector.
  long long max_tuples = 1'000'000;
  /// Largest base-change group searched for one canonical key.
  long long max_group = 2'000'000;
  /// Largest Hom space enumerated element by element.
  long long max_hom_elements = 5'000'000;
};

struct EngineCounters {
  std::atomic<long long> hall_tables_computed{0};
  std::atomic<long long> hall_numbers_computed{0};
  std::atomic<long long> hall_tables_from_cache{0};
  std::atomic<long long> orbit_searches{0};
};

/// The finite-field representation engine for one quiver and one q.
///
/// Every isoclass met during a computation is interned once and referred to
/// by ClassId afterwards. All memo tables are safe for concurrent use.
class RepEngine {
 public:
  RepEngine(Quiver quiver, int q, EngineLimits limits = {});
  ~RepEngine();
  RepEngine(const RepEngine&) = delete;
  RepEngine& operator=(const RepEngine&) = delete;

  const RepSpace& space() const { return space_; }
  const Quiver& quiver() const { return space_.quiver(); }
  const Field& field() const { return space_.field(); }
  int q() const { return space_.q(); }

  /// Attach a persistent Hall-number cache (may be null).
  void set_cache(std::shared_ptr<HallCache> cache) { cache_ = std::move(cache); }
  const EngineCounters& counters() const { return counters_; }

  // -- isoclasses ----------------------------------------------------------
  IsoKey canonical_key(const Rep& m);
  ClassId classify(const Rep& m);
  ClassId intern_key(const IsoKey& key);
  ClassId zero_class();
  /// Krull-Schmidt decomposition: indecomposable summand classes with
  /// multiplicities. Throws ResourceError if a summand cannot be certified.
  std::map<ClassId, int> decompose(const Rep& m);
  /// Whether classes of dimension d get orbit-minimal keys.
  bool orbit_keyed(const Weight& d) const;
  const IsoKey& key(ClassId id) const;
  const Rep& rep(ClassId id) const;
  const Weight& dim(ClassId id) const;

  /// All classes of dimension exactly d, sorted by key.
  const std::vector<ClassId>& classes_of_dim(const Weight& d);
  /// All classes with dim <= bound componentwise, in deterministic order
  /// (total dimension, then dimension vector, then key).
  std::vector<ClassId> enumerate_isoclasses(const Weight& bound);
  /// Orders class ids by (total dim, dim vector, key).
  bool class_less(ClassId x, ClassId y) const;

  // -- homological data ----------------------------------------------------
  int hom_dim(ClassId m, ClassId n);
  int euler_form(const Weight& d, const Weight& e) const { return quiver().euler(d, e); }
  int sym_euler(const Weight& d, const Weight& e) const { return quiver().symmetric_euler(d, e); }
  /// dim Hom - <dim M, dim N>; throws InternalInconsistency if negative.
  int ext1_dim(ClassId m, ClassId n);
  /// |Aut M|, by enumeration of End M when small and otherwise from the
  /// decomposition: q^{dim End - sum m_i^2 d_i} prod |GL(m_i, q^{d_i})|.
  std::int64_t aut_count(ClassId m);
  /// d with End(X)/rad End(X) = F_{q^d}, for an indecomposable X.
  int residue_degree(ClassId x);

  // -- Hall numbers --------------------------------------------------------
  const HallTable& hall_table(ClassId l);
  /// g^L_{MN}; uses the full table of L when available or cheap, and
  /// otherwise counts the subrepresentations of dimension dim N directly.
  std::int64_t hall_number(ClassId l, ClassId m, ClassId n);
  /// |Ext^1(M, N)_L| via the Riedtmann-Peng identity.
  std::int64_t ext_count_middle(ClassId m, ClassId n, ClassId l);
  /// Classes of Ext^1(M, N) counted by the class of their middle term, by
  /// enumerating cocycles modulo coboundaries.
  const std::map<ClassId, std::int64_t>& extension_middles(ClassId m, ClassId n);
  /// Sum over classes M of g^M_{XY} g^L_{MZ}.
  std::int64_t triple_hall_number(ClassId l, ClassId x, ClassId y, ClassId z);

  // -- resolutions and exact sequences --------------------------------------
  const Resolution& resolution(ClassId m);
  /// Counts of (ker g, coker g) over all g in Hom(A, B).
  const std::map<std::pair<ClassId, ClassId>, std::int64_t>& kernel_cokernel_table(ClassId a, ClassId b);
  /// sum_L a_L g^A_{LX} g^B_{YL}.
  std::int64_t exact_pair_formula(ClassId a, ClassId b, ClassId x, ClassId y);
  /// Both routes of the exact-pair count; throws if they disagree.
  ExactPairCount exact_pair_count(ClassId a, ClassId b, ClassId x, ClassId y);

  /// Minimal projective resolution of an arbitrary representation.
  Resolution min_proj_res(const Rep& m) const;

 private:
  struct ClassInfo {
    IsoKey key;
    Rep rep;
    Weight top;
    Weight socle;
  };

  std::string raw_encoding(const Rep& m) const;
  std::string fingerprint(const Weight& dim, const Weight& top, const Weight& socle) const;
  IsoKey key_from_rep(const Rep& canonical) const;
  Rep rep_from_key(const IsoKey& key) const;
  ClassId register_class(const IsoKey& key, const Rep& rep);
  /// Explores the whole base-change orbit of m, memoizing every member.
  ClassId orbit_classify(const Rep& m, const std::string& raw);
  /// Keys m by its indecomposable summands.
  ClassId sum_classify(const Rep& m, const std::string& raw);
  std::vector<Rep> split_indecomposables(const Rep& m) const;
  std::optional<Morphism> splitting_endomorphism(const Rep& m) const;
  HallTable compute_hall_table(ClassId l);

  RepSpace space_;
  EngineLimits limits_;
  EngineCounters counters_;
  std::shared_ptr<HallCache> cache_;

  mutable std::shared_mutex registry_mu_;
  std::deque<ClassInfo> classes_;
  std::map<std::string, ClassId> by_key_;
  std::unordered_map<std::string, ClassId> by_raw_;
  std::map<std::string, std::vector<ClassId>> buckets_;  // fingerprint -> classes (complete dims only)
  std::map<Weight, std::vector<ClassId>> by_dim_;        // complete enumerations

  Memo<std::pair<ClassId, ClassId>, int> hom_dims_;
  Memo<ClassId, std::int64_t> auts_;
  Memo<ClassId, int> residue_degrees_;
  Memo<std::tuple<ClassId, ClassId, ClassId>, std::int64_t> direct_hall_numbers_;
  Memo<std::pair<ClassId, ClassId>, std::map<ClassId, std::int64_t>> extension_middles_;
  Memo<ClassId, HallTable> hall_tables_;
  Memo<ClassId, Resolution> resolutions_;
  Memo<std::pair<ClassId, ClassId>, std::map<std::pair<ClassId, ClassId>, std::int64_t>> kc_tables_;
};

}  // namespace hallbridge
