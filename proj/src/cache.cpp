#include "spectralrec/cache.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "spectralrec/serialize.hpp"

namespace spectralrec {

namespace {

constexpr const char* kMagic = "spectralrec-wgn-cache 1";

std::string curve_identity(const CurveModel& curve) {
  return curve.x.str("z") + " ; " + curve.y.str("z");
}

std::string cache_path(const CurveModel& curve, const std::string& dir) {
  std::ostringstream name;
  name << dir << "/wgn-" << std::hex
       << std::hash<std::string>{}(curve_identity(curve)) << ".cache";
  return name.str();
}

}  // namespace

bool load_engine_cache(Engine& engine, const std::string& dir) {
  std::ifstream in(cache_path(engine.model(), dir));
  if (!in) return false;
  std::string magic, identity;
  if (!std::getline(in, magic) || magic != kMagic) return false;
  if (!std::getline(in, identity) || identity != curve_identity(engine.model()))
    return false;
  size_t len = 0;
  while (in >> len) {
    in.get();  // the newline after the length
    std::string blob(len, '\0');
    if (!in.read(blob.data(), (std::streamsize)len)) return false;
    Json j = Json::parse(blob, nullptr, false);
    if (j.is_discarded()) return false;
    engine.preload(j.at("g").get<int>(), j.at("n").get<int>(),
                   multidiff_from_json(j.at("w")));
  }
  return true;
}

bool save_engine_cache(Engine& engine, const std::string& dir) {
  std::ofstream out(cache_path(engine.model(), dir), std::ios::trunc);
  if (!out) return false;
  out << kMagic << "\n" << curve_identity(engine.model()) << "\n";
  for (const auto& [key, w] : engine.cache()) {
    Json j{{"g", key.first}, {"n", key.second}, {"w", to_json(w)}};
    std::string blob = j.dump();
    out << blob.size() << "\n" << blob;
  }
  return bool(out);
}

}  // namespace spectralrec
