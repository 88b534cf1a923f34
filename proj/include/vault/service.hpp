#pragma once

#include <ctime>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include <httplib.h>

#include "vault/blobstore.hpp"
#include "vault/config.hpp"
#include "vault/graph.hpp"
#include "vault/grants.hpp"
#include "vault/query.hpp"
#include "vault/vocab.hpp"

namespace vault {

class StartupError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The HTTP face of the vault. All state lives under dataDir; every mutating
// route persists before it replies. Reads run concurrently under a shared
// lock, mutations take the exclusive side.
class VaultService {
public:
  // Throws StartupError when the data dir, store, counter, rules or journal
  // are unreadable or malformed. The clock is injectable for tests.
  explicit VaultService(ServiceConfig cfg, std::function<std::time_t()> clock = {});

  // Binds per config; listen_port 0 picks an ephemeral port. Returns the
  // bound port, -1 when the bind fails. Serve with listen_after_bind().
  int bind_port();
  bool listen_after_bind();
  void wait_ready() { server_.wait_until_ready(); }
  void stop() { server_.stop(); }

  const Vocabulary& vocab() const { return vocab_; }
  const ServiceConfig& config() const { return cfg_; }
  int port() const { return bound_port_ ? bound_port_ : cfg_.listen_port; }

private:
  void install_routes();

  bool authorized(const httplib::Request& req) const;
  std::string client_ip(const httplib::Request& req) const;
  Date today_utc() const;
  Iri doc_iri(uint64_t n) const;
  std::string grant_url_base() const;

  // Both commit_* run under the writer lock; disk first, memory second.
  void commit_graph(Graph g);
  void commit_counter(uint64_t next);

  std::filesystem::path store_path() const { return cfg_.data_dir / "store.nt"; }
  std::filesystem::path counter_path() const { return cfg_.data_dir / "counter.txt"; }

  ServiceConfig cfg_;
  Vocabulary vocab_;
  std::function<std::time_t()> clock_;

  mutable std::shared_mutex mu_;
  Graph graph_;
  uint64_t next_doc_id_ = 1;
  std::unique_ptr<BlobStore> blobs_;
  std::unique_ptr<GrantStore> grants_;
  RuleSet rules_;

  httplib::Server server_;
  int bound_port_ = 0;
};

}  // namespace vault
