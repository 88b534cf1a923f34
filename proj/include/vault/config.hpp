#pragma once

#include <filesystem>
#include <string>

#include "vault/vocab.hpp"

namespace vault {

struct ServiceConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::filesystem::path data_dir;
  std::string base_iri = "http://portfolio.det.uvigo.es";  // minted doc IRIs: {base}/doc/{n}
  std::string ns = Vocabulary::kDefaultNamespace;
  std::filesystem::path rules_file;  // empty: dataDir/rules.txt, created if absent
  std::string citizen_key;
  bool trust_proxy_header = false;  // honor X-Forwarded-For
  long default_grant_ttl_seconds = 900;
  long expiry_window_days_default = 30;
  // printed in front of /grants/{token} in create_grant bodies; defaults to
  // http://{listen_host}:{listen_port}
  std::string external_base_url;
};

}  // namespace vault
