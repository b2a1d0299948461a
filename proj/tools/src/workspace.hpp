#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace signalcast::cli {

namespace fs = std::filesystem;

/// Output directory of a run. Every artifact is written to a temporary file
/// and renamed into place, so readers never observe half-written files.
class Workspace {
 public:
  explicit Workspace(fs::path root);

  const fs::path& root() const { return root_; }
  fs::path path(const std::string& name) const { return root_ / name; }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body);
  void write_text(const std::string& name, const std::string& text);

  /// Path of an artifact produced by an earlier stage. Throws ValidationError
  /// naming the stage to run first.
  fs::path require(const std::string& name, const std::string& producer) const;
  bool has(const std::string& name) const { return fs::exists(path(name)); }

  /// Records the artifacts written by a stage in manifest.json.
  void record(const std::string& stage, std::uint64_t seed);

 private:
  fs::path root_;
  std::vector<std::string> written_;
};

}  // namespace signalcast::cli
