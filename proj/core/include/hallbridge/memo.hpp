#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

namespace hallbridge {

/// Memo table with concurrent readers and serialized inserts. Values are
/// computed outside the lock, so two threads may compute the same entry;
/// the first insert wins and both see the same stored value. References stay
/// valid for the lifetime of the table.
template <class Key, class Value, class Map = std::map<Key, Value>>
class Memo {
 public:
  template <class Fn>
  const Value& get_or_compute(const Key& key, Fn&& compute) {
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    Value v = compute();
    std::unique_lock lock(mu_);
    return map_.emplace(key, std::move(v)).first->second;
  }

  std::optional<Value> find(const Key& key) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  const Value& insert(const Key& key, Value v) {
    std::unique_lock lock(mu_);
    return map_.emplace(key, std::move(v)).first->second;
  }

  size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mu_;
  Map map_;
};

template <class Key, class Value, class Hash = std::hash<Key>>
using HashMemo = Memo<Key, Value, std::unordered_map<Key, Value, Hash>>;

}  // namespace hallbridge
