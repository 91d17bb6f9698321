#include "manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>

#include "jointdrop/error.hpp"

namespace jointdrop::cli {

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "' for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

nlohmann::ordered_json BuildManifest(std::string_view subcommand,
                                     const nlohmann::ordered_json& config,
                                     const std::vector<std::filesystem::path>& inputs,
                                     std::optional<std::uint64_t> seed) {
  nlohmann::ordered_json m;
  m["tool"] = "jointdrop";
  m["tool_version"] = JOINTDROP_VERSION;
  m["subcommand"] = subcommand;
  m["config"] = config;
  nlohmann::ordered_json digests = nlohmann::ordered_json::object();
  for (const auto& p : inputs) digests[p.string()] = "sha256:" + Sha256File(p);
  m["inputs"] = digests;
  if (seed) {
    m["seed"] = *seed;
  } else {
    m["seed"] = nullptr;
  }
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  m["timestamp"] = stamp;
  return m;
}

void WriteJson(const std::filesystem::path& path, const nlohmann::ordered_json& value) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "' for writing");
  out << value.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path.string() + "'");
}

nlohmann::json LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kInvalidConfig, "config '" + path.string() + "': " + e.what());
  }
  if (j.is_object() && j.contains("config") && j["config"].is_object()) j = j["config"];
  if (!j.is_object()) {
    throw Error(ErrorKind::kInvalidConfig, "config '" + path.string() + "' must be a JSON object");
  }
  return j;
}

std::vector<std::string> ConfigToArgs(const nlohmann::json& config) {
  std::vector<std::string> args;
  for (const auto& [key, value] : config.items()) {
    const std::string flag = "--" + key;
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back(flag);
      args.push_back(value.dump());
    } else {
      throw Error(ErrorKind::kInvalidConfig, "config key '" + key + "' must be a scalar");
    }
  }
  return args;
}

}  // namespace jointdrop::cli
