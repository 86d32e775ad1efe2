#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hallbridge {

/// Append-only record file of Hall numbers, scoped by quiver fingerprint and q.
///
/// Each line carries a CRC32 of its payload. A table for L is trusted only
/// when its completion record is intact and every Hall number it announces
/// was read back with a valid checksum; anything else is recomputed.
///
///   H <quiver> <q> <L> <M> <N> <g> <crc>
///   T <quiver> <q> <L> <count> <crc>
class HallCache {
 public:
  struct Entry {
    std::string quotient;  // M
    std::string sub;       // N
    std::int64_t count;    // g^L_{MN}
  };

  HallCache(std::filesystem::path dir, std::uint64_t quiver_fingerprint, int q);

  std::optional<std::vector<Entry>> lookup(const std::string& l_key) const;
  void store(const std::string& l_key, const std::vector<Entry>& entries);

  std::size_t tables_loaded() const;
  std::size_t corrupt_records() const { return corrupt_; }
  const std::filesystem::path& file() const { return file_; }

 private:
  void load();
  std::string scope() const;

  std::filesystem::path file_;
  std::uint64_t quiver_;
  int q_;
  mutable std::mutex mu_;
  std::map<std::string, std::vector<Entry>> tables_;
  std::size_t corrupt_ = 0;
};

/// CRC32 of a string, as 8 lowercase hex digits.
std::string crc32_hex(const std::string& payload);

}  // namespace hallbridge
