#pragma once

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "vault/cidr.hpp"
#include "vault/term.hpp"

namespace vault {

// 32 chars from [A-Za-z0-9], drawn from the process CSPRNG with rejection
// sampling so every symbol is equally likely.
std::string generate_token();
bool token_shape_ok(std::string_view token);

std::string rfc3339_utc(std::time_t t);
std::optional<std::time_t> parse_rfc3339_utc(std::string_view s);

enum class GrantStatus { Issued, Consumed, Expired, Revoked };

const char* to_string(GrantStatus s);
std::optional<GrantStatus> grant_status_from(std::string_view s);

struct Grant {
  std::string token;
  Iri document;
  Cidr cidr;
  std::time_t issued_at;
  long ttl_seconds;
  GrantStatus status;
  std::optional<std::time_t> consumed_at;
  std::optional<std::string> consumed_from;

  bool expired_by(std::time_t now) const {
    return now >= issued_at + static_cast<std::time_t>(ttl_seconds);
  }
};

class JournalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Grant state machine over an append-only TSV journal. Every transition is
// appended and flushed before the call returns, so the journal replays to the
// in-memory state after a process kill. Later lines supersede earlier ones
// per token.
class GrantStore {
public:
  // Replays the journal if present, then opens it for appending.
  explicit GrantStore(std::filesystem::path journal_path);
  ~GrantStore();

  GrantStore(const GrantStore&) = delete;
  GrantStore& operator=(const GrantStore&) = delete;

  // Journals an ISSUED grant and returns it. Redraws on token collision.
  Grant create(const Iri& document, const Cidr& cidr, long ttl_seconds, std::time_t now);

  // Copy of the current grant state, if the token is known.
  std::optional<Grant> find(const std::string& token) const;

  // The ISSUED -> CONSUMED step alone: journals and flips iff the grant is
  // currently ISSUED and unexpired. The linearization point for redemption.
  bool consume(const std::string& token, const std::string& ip, std::time_t now);

  enum class Redeem { Ok, NotFound, Gone, Forbidden };

  // Full redemption decision: state, TTL and IP checks plus consume, under
  // one lock. On Ok the consumed grant is copied to *out when given.
  Redeem redeem(const std::string& token, const std::string& ip, std::time_t now,
                Grant* out = nullptr);

  enum class Revoke { Ok, NotFound };

  // ISSUED -> REVOKED; terminal states are left alone (idempotent Ok).
  Revoke revoke(const std::string& token);

  // Materializes EXPIRED for every ISSUED grant past its TTL; returns how
  // many transitioned. Redemption does not depend on this running.
  std::size_t sweep_expired(std::time_t now);

  std::size_t size() const;

  // Pure journal fold, exposed so recovery tests can diff it against a live
  // store's state.
  static std::map<std::string, Grant> replay(const std::filesystem::path& journal_path);

private:
  void append_locked(const Grant& g);

  mutable std::mutex mu_;
  std::map<std::string, Grant> grants_;
  std::filesystem::path path_;
  std::FILE* out_;
};

}  // namespace vault
