#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "pebbling/engine.hpp"
#include "pebbling/version.hpp"

namespace pebbling {

struct CacheRecord {
  std::string graph_digest;
  std::string kind;
  std::string mode;
  long long value = 0;
  std::string worst_witness;  // serialized configuration
  std::string engine_version;
  long long timestamp = 0;
};

inline void to_json(nlohmann::json& j, const CacheRecord& r) {
  j = {{"digest", r.graph_digest}, {"kind", r.kind},
       {"mode", r.mode},           {"value", r.value},
       {"worst_witness", r.worst_witness},
       {"engine_version", r.engine_version},
       {"timestamp", r.timestamp}};
}

inline void from_json(const nlohmann::json& j, CacheRecord& r) {
  j.at("digest").get_to(r.graph_digest);
  j.at("kind").get_to(r.kind);
  j.at("mode").get_to(r.mode);
  j.at("value").get_to(r.value);
  j.at("worst_witness").get_to(r.worst_witness);
  j.at("engine_version").get_to(r.engine_version);
  j.at("timestamp").get_to(r.timestamp);
}

/// Append-only, line-delimited record store with advisory whole-file
/// locking. Records written by a different engine version are ignored on
/// read. Lock-acquisition failure degrades to cache-off with a warning.
class ResultCache {
 public:
  explicit ResultCache(std::string path) : path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  std::optional<CacheRecord> get(const std::string& digest,
                                 const std::string& kind,
                                 const std::string& mode) const {
    FileLock lock(path_, LOCK_SH);
    if (!lock.held()) return std::nullopt;
    std::ifstream in(path_);
    if (!in) return std::nullopt;
    std::optional<CacheRecord> newest;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      CacheRecord r;
      try {
        r = nlohmann::json::parse(line).get<CacheRecord>();
      } catch (const std::exception&) {
        std::cerr << "warning: skipping corrupted cache line in " << path_
                  << "\n";
        continue;
      }
      if (r.engine_version != kEngineVersion) continue;
      if (r.graph_digest == digest && r.kind == kind && r.mode == mode)
        newest = r;  // later lines win
    }
    return newest;
  }

  bool put(CacheRecord r) const {
    r.engine_version = kEngineVersion;
    if (r.timestamp == 0) r.timestamp = static_cast<long long>(std::time(nullptr));
    FileLock lock(path_, LOCK_EX);
    if (!lock.held()) return false;
    std::ofstream out(path_, std::ios::app);
    if (!out) {
      std::cerr << "warning: cache file " << path_ << " is not writable\n";
      return false;
    }
    out << nlohmann::json(r).dump() << "\n";
    return true;
  }

 private:
  class FileLock {
   public:
    FileLock(const std::string& path, int op) {
      fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
      if (fd_ < 0) return;
      if (::flock(fd_, op) != 0) {
        std::cerr << "warning: cache lock unavailable; cache disabled for this"
                     " operation\n";
        ::close(fd_);
        fd_ = -1;
      }
    }
    ~FileLock() {
      if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
      }
    }
    bool held() const { return fd_ >= 0; }

   private:
    int fd_ = -1;
  };

  std::string path_;
};

}  // namespace pebbling
