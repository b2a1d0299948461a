#include "workspace.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "signalcast/error.hpp"

namespace signalcast::cli {

namespace {

constexpr int kFormatVersion = 1;

void atomic_write(const fs::path& target, const std::string& content) {
  fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ValidationError("failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace

Workspace::Workspace(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

void Workspace::write(const std::string& name, const std::function<void(std::ostream&)>& body) {
  std::ostringstream out;
  body(out);
  atomic_write(path(name), out.str());
  written_.push_back(name);
}

void Workspace::write_text(const std::string& name, const std::string& text) {
  write(name, [&](std::ostream& out) { out << text; });
}

fs::path Workspace::require(const std::string& name, const std::string& producer) const {
  const auto p = path(name);
  if (!fs::exists(p)) {
    throw ValidationError("missing artifact " + name + " in " + root_.string() + "; run `signalcast " + producer +
                          "` first");
  }
  return p;
}

void Workspace::record(const std::string& stage, std::uint64_t seed) {
  nlohmann::json manifest;
  const auto mpath = path("manifest.json");
  if (fs::exists(mpath)) {
    std::ifstream in(mpath);
    try {
      manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception&) {
      manifest = nlohmann::json::object();
    }
  }
  manifest["format_version"] = kFormatVersion;
  manifest["stages"][stage] = {{"seed", seed}, {"artifacts", written_}};
  atomic_write(mpath, manifest.dump(2) + "\n");
  written_.clear();
}

}  // namespace signalcast::cli
