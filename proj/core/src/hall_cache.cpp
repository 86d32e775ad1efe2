#include "hallbridge/hall_cache.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace hallbridge {

std::string crc32_hex(const std::string& payload) {
  auto crc = crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

HallCache::HallCache(std::filesystem::path dir, std::uint64_t quiver_fingerprint, int q)
    : file_(std::move(dir) / "hall_numbers.log"), quiver_(quiver_fingerprint), q_(q) {
  std::filesystem::create_directories(file_.parent_path());
  load();
}

std::string HallCache::scope() const {
  std::ostringstream os;
  os << std::hex << quiver_ << '\t' << std::dec << q_;
  return os.str();
}

void HallCache::load() {
  std::ifstream in(file_);
  if (!in) return;
  const std::string my_scope = scope();
  std::map<std::string, std::map<std::pair<std::string, std::string>, std::int64_t>> numbers;
  std::map<std::string, std::set<std::size_t>> announced;
  std::set<std::string> conflicting;
  std::string line;
  while (std::getline(in, line)) {
    auto tab = line.rfind('\t');
    if (tab == std::string::npos || crc32_hex(line.substr(0, tab)) != line.substr(tab + 1)) {
      ++corrupt_;
      continue;
    }
    auto f = split_tabs(line.substr(0, tab));
    if (f.size() < 4 || f[1] + '\t' + f[2] != my_scope) continue;
    try {
      if (f[0] == "H" && f.size() == 7) {
        auto [it, fresh] = numbers[f[3]].emplace(std::make_pair(f[4], f[5]), std::stoll(f[6]));
        if (!fresh && it->second != std::stoll(f[6])) conflicting.insert(f[3]);
      } else if (f[0] == "T" && f.size() == 5) {
        announced[f[3]].insert(static_cast<std::size_t>(std::stoull(f[4])));
      } else {
        ++corrupt_;
      }
    } catch (const std::exception&) {
      ++corrupt_;
    }
  }
  for (const auto& [l, counts] : announced) {
    if (conflicting.count(l)) continue;
    auto it = numbers.find(l);
    std::size_t have = it == numbers.end() ? 0 : it->second.size();
    if (!counts.count(have)) continue;
    std::vector<Entry> entries;
    if (it != numbers.end())
      for (const auto& [mn, g] : it->second) entries.push_back({mn.first, mn.second, g});
    tables_[l] = std::move(entries);
  }
}

std::optional<std::vector<HallCache::Entry>> HallCache::lookup(const std::string& l_key) const {
  std::lock_guard lock(mu_);
  auto it = tables_.find(l_key);
  if (it == tables_.end()) return std::nullopt;
  return it->second;
}

void HallCache::store(const std::string& l_key, const std::vector<Entry>& entries) {
  std::lock_guard lock(mu_);
  if (tables_.count(l_key)) return;
  std::ofstream out(file_, std::ios::app);
  const std::string s = scope();
  auto emit = [&out](const std::string& payload) { out << payload << '\t' << crc32_hex(payload) << '\n'; };
  for (const auto& e : entries)
    emit("H\t" + s + '\t' + l_key + '\t' + e.quotient + '\t' + e.sub + '\t' + std::to_string(e.count));
  emit("T\t" + s + '\t' + l_key + '\t' + std::to_string(entries.size()));
  out.flush();
  tables_[l_key] = entries;
}

std::size_t HallCache::tables_loaded() const {
  std::lock_guard lock(mu_);
  return tables_.size();
}

}  // namespace hallbridge
