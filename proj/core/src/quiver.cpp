#include "hallbridge/quiver.hpp"

#include <zlib.h>

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "hallbridge/error.hpp"

namespace hallbridge {

namespace {

void check_same_size(const Weight& x, const Weight& y) {
  if (x.size() != y.size()) throw ContractViolation("weight length mismatch");
}

}  // namespace

Weight operator+(const Weight& x, const Weight& y) {
  Weight r = x;
  return r += y;
}

Weight operator-(const Weight& x, const Weight& y) {
  Weight r = x;
  return r -= y;
}

Weight operator-(const Weight& x) {
  Weight r = x;
  for (int& e : r) e = -e;
  return r;
}

Weight& operator+=(Weight& x, const Weight& y) {
  check_same_size(x, y);
  for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return x;
}

Weight& operator-=(Weight& x, const Weight& y) {
  check_same_size(x, y);
  for (size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return x;
}

Weight operator*(int s, const Weight& x) {
  Weight r = x;
  for (int& e : r) e *= s;
  return r;
}

bool is_zero(const Weight& w) {
  for (int e : w)
    if (e != 0) return false;
  return true;
}

bool is_nonnegative(const Weight& w) {
  for (int e : w)
    if (e < 0) return false;
  return true;
}

bool dominated_by(const Weight& x, const Weight& y) {
  check_same_size(x, y);
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

int total(const Weight& w) {
  int t = 0;
  for (int e : w) t += e;
  return t;
}

std::string to_string(const Weight& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

Weight parse_weight(const std::string& text) {
  Weight w;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t used = 0;
      w.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw FormatError("bad integer vector: " + text);
    }
  }
  return w;
}

Weight Quiver::unit(int vertex) const {
  Weight w = zero();
  w[static_cast<size_t>(vertex)] = 1;
  return w;
}

Quiver Quiver::validate(const QuiverPresentation& spec) {
  Quiver q;
  std::map<std::string, int> index;
  for (const auto& label : spec.vertices) {
    if (label.empty()) throw FormatError("empty vertex label");
    if (!index.emplace(label, static_cast<int>(index.size())).second) throw FormatError("duplicate vertex label: " + label);
    q.labels_.push_back(label);
  }
  std::set<std::string> arrow_labels;
  for (const auto& a : spec.arrows) {
    // Labels appear inside isoclass keys, so key punctuation is reserved.
    if (a.label.empty() || a.label.find_first_of(";=/[]^.,") != std::string::npos)
      throw FormatError("arrow label must be nonempty and avoid ;=/[]^.,: '" + a.label + "'");
    if (!arrow_labels.insert(a.label).second || index.count(a.label))
      throw FormatError("duplicate label: " + a.label);
    auto s = index.find(a.from);
    auto t = index.find(a.to);
    if (s == index.end() || t == index.end()) throw FormatError("arrow " + a.label + " has an unknown endpoint");
    q.arrows_.push_back({s->second, t->second, a.label});
  }

  // Kahn's algorithm, smallest index first so the order is deterministic.
  const int n = q.num_vertices();
  std::vector<int> indegree(static_cast<size_t>(n), 0);
  for (const auto& a : q.arrows_) ++indegree[static_cast<size_t>(a.target)];
  std::set<int> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[static_cast<size_t>(i)] == 0) ready.insert(i);
  while (!ready.empty()) {
    int v = *ready.begin();
    ready.erase(ready.begin());
    q.order_.push_back(v);
    for (const auto& a : q.arrows_)
      if (a.source == v && --indegree[static_cast<size_t>(a.target)] == 0) ready.insert(a.target);
  }
  if (static_cast<int>(q.order_.size()) != n)
    throw ContractViolation("oriented cycle detected: not hereditary-with-enough-projectives in scope");

  // paths_[i][j]: extend paths along the topological order.
  q.paths_.assign(static_cast<size_t>(n), std::vector<std::vector<std::vector<int>>>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) {
    q.paths_[static_cast<size_t>(i)][static_cast<size_t>(i)].push_back({});
    for (int v : q.order_) {
      for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& arr = q.arrows_[static_cast<size_t>(a)];
        if (arr.source != v) continue;
        for (const auto& p : q.paths_[static_cast<size_t>(i)][static_cast<size_t>(v)]) {
          auto ext = p;
          ext.push_back(a);
          q.paths_[static_cast<size_t>(i)][static_cast<size_t>(arr.target)].push_back(std::move(ext));
        }
      }
    }
  }

  std::string canon = q.to_json();
  q.fingerprint_ = crc32(0L, reinterpret_cast<const Bytef*>(canon.data()), static_cast<uInt>(canon.size()));
  q.fingerprint_ = (q.fingerprint_ << 32) | static_cast<std::uint64_t>(canon.size());
  return q;
}

Quiver Quiver::from_json(const std::string& text) {
  QuiverPresentation spec;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& v : j.at("vertices")) spec.vertices.push_back(v.get<std::string>());
    if (j.contains("arrows"))
      for (const auto& a : j.at("arrows"))
        spec.arrows.push_back({a.at("from").get<std::string>(), a.at("to").get<std::string>(), a.at("label").get<std::string>()});
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("quiver file: ") + e.what());
  }
  return validate(spec);
}

Quiver Quiver::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read quiver file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string Quiver::to_json() const {
  nlohmann::json j;
  j["vertices"] = labels_;
  j["arrows"] = nlohmann::json::array();
  for (const auto& a : arrows_)
    j["arrows"].push_back({{"from", labels_[static_cast<size_t>(a.source)]}, {"to", labels_[static_cast<size_t>(a.target)]}, {"label", a.label}});
  return j.dump();
}

int Quiver::euler(const Weight& d, const Weight& e) const {
  if (static_cast<int>(d.size()) != num_vertices() || static_cast<int>(e.size()) != num_vertices())
    throw ContractViolation("weight does not match the quiver");
  int s = 0;
  for (int i = 0; i < num_vertices(); ++i) s += d[static_cast<size_t>(i)] * e[static_cast<size_t>(i)];
  for (const auto& a : arrows_) s -= d[static_cast<size_t>(a.source)] * e[static_cast<size_t>(a.target)];
  return s;
}

const std::vector<std::vector<int>>& Quiver::paths(int i, int j) const {
  return paths_[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

Weight Quiver::projective_dim(int i) const {
  Weight w = zero();
  for (int j = 0; j < num_vertices(); ++j) w[static_cast<size_t>(j)] = static_cast<int>(paths(i, j).size());
  return w;
}

}  // namespace hallbridge
