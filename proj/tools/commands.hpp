#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace jetmap::cli {

// Each command returns the process exit code. An empty out path means stdout.
int cmd_table(const nlohmann::json& cfg, const std::string& out);
int cmd_expand(const nlohmann::json& cfg, const std::string& out, bool compare);
int cmd_scan(const nlohmann::json& cfg, const std::string& out);
int cmd_attract(const nlohmann::json& cfg, const std::string& out);

struct VerifyOptions {
  bool list = false;
  double tol = 1e-12;  // tolerance for every adaptive integration
};
int cmd_verify(const VerifyOptions& opts);

}  // namespace jetmap::cli
