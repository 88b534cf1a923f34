#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "vault/config.hpp"
#include "vault/service.hpp"

int main(int argc, char** argv) {
  vault::ServiceConfig cfg;
  std::string data_dir;
  std::string rules_file;

  CLI::App app{"vaultd: semantic document vault daemon"};
  app.add_option("--host", cfg.listen_host, "Listen address")->envname("VAULT_HOST");
  app.add_option("--port", cfg.listen_port, "Listen port (0 picks an ephemeral one)")
      ->envname("VAULT_PORT");
  app.add_option("--data-dir", data_dir, "State directory")
      ->envname("VAULT_DATA_DIR")
      ->required();
  app.add_option("--base-iri", cfg.base_iri, "Prefix for minted document IRIs")
      ->envname("VAULT_BASE_IRI");
  app.add_option("--ns", cfg.ns, "Vocabulary namespace prefix")->envname("VAULT_NS");
  app.add_option("--rules-file", rules_file, "Inference rules file")
      ->envname("VAULT_RULES_FILE");
  app.add_option("--key", cfg.citizen_key, "Citizen bearer key")
      ->envname("VAULT_KEY")
      ->required();
  app.add_flag("--trust-proxy-header", cfg.trust_proxy_header,
               "Take the client IP from X-Forwarded-For");
  app.add_option("--grant-ttl", cfg.default_grant_ttl_seconds,
                 "Default grant TTL in seconds")
      ->envname("VAULT_GRANT_TTL");
  app.add_option("--expiry-window", cfg.expiry_window_days_default,
                 "Default /insights/expiring window in days")
      ->envname("VAULT_EXPIRY_WINDOW");
  app.add_option("--external-base-url", cfg.external_base_url,
                 "URL prefix for grant links (default http://host:port)")
      ->envname("VAULT_EXTERNAL_BASE_URL");
  CLI11_PARSE(app, argc, argv);

  cfg.data_dir = data_dir;
  cfg.rules_file = rules_file;

  try {
    vault::VaultService svc(std::move(cfg));
    int port = svc.bind_port();
    if (port <= 0) {
      std::fprintf(stderr, "vaultd: cannot bind %s:%d\n",
                   svc.config().listen_host.c_str(), svc.config().listen_port);
      return 1;
    }
    std::printf("listening on http://%s:%d\n", svc.config().listen_host.c_str(), port);
    std::fflush(stdout);
    if (!svc.listen_after_bind()) {
      std::fprintf(stderr, "vaultd: serve loop failed\n");
      return 1;
    }
  } catch (const vault::StartupError& e) {
    std::fprintf(stderr, "vaultd: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "vaultd: %s\n", e.what());
    return 1;
  }
  return 0;
}
