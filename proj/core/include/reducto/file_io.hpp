#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reducto {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, fsyncs it and renames it over `path`,
/// so readers see either the old or the new content.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Appends and fsyncs.
void append_file(const std::filesystem::path& path, std::string_view content);

/// Advisory exclusive lock (flock) on `<path>.lock`, held for the object's lifetime.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path);
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock();

 private:
  int fd_ = -1;
};

}  // namespace reducto
