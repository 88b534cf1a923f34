#include "vault/grants.hpp"

#include <openssl/rand.h>

#include <cstring>
#include <vector>

#include "vault/fsutil.hpp"

namespace vault {

namespace {
constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
constexpr std::size_t kAlphabetSize = 62;
constexpr std::size_t kTokenLength = 32;
}  // namespace

std::string generate_token() {
  std::string token;
  token.reserve(kTokenLength);
  unsigned char buf[64];
  std::size_t avail = 0, used = 0;
  while (token.size() < kTokenLength) {
    if (used == avail) {
      if (RAND_bytes(buf, sizeof buf) != 1) {
        throw std::runtime_error("RAND_bytes failed");
      }
      avail = sizeof buf;
      used = 0;
    }
    unsigned char b = buf[used++];
    // rejection sampling: 248 = 4 * 62, so accepted bytes are uniform mod 62
    if (b >= 248) continue;
    token += kAlphabet[b % kAlphabetSize];
  }
  return token;
}

bool token_shape_ok(std::string_view token) {
  if (token.size() != kTokenLength) return false;
  for (char c : token) {
    if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) {
      return false;
    }
  }
  return true;
}

std::string rfc3339_utc(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::time_t> parse_rfc3339_utc(std::string_view s) {
  if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' ||
      s[16] != ':' || s[19] != 'Z') {
    return std::nullopt;
  }
  std::tm tm{};
  auto num = [&](std::size_t off, std::size_t len, int& out) {
    out = 0;
    for (std::size_t i = off; i < off + len; ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
      out = out * 10 + (s[i] - '0');
    }
    return true;
  };
  int year, mon, day, hour, min, sec;
  if (!num(0, 4, year) || !num(5, 2, mon) || !num(8, 2, day) || !num(11, 2, hour) ||
      !num(14, 2, min) || !num(17, 2, sec)) {
    return std::nullopt;
  }
  tm.tm_year = year - 1900;
  tm.tm_mon = mon - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = min;
  tm.tm_sec = sec;
  std::time_t t = timegm(&tm);
  if (t == static_cast<std::time_t>(-1)) return std::nullopt;
  return t;
}

const char* to_string(GrantStatus s) {
  switch (s) {
    case GrantStatus::Issued: return "ISSUED";
    case GrantStatus::Consumed: return "CONSUMED";
    case GrantStatus::Expired: return "EXPIRED";
    case GrantStatus::Revoked: return "REVOKED";
  }
  return "?";
}

std::optional<GrantStatus> grant_status_from(std::string_view s) {
  if (s == "ISSUED") return GrantStatus::Issued;
  if (s == "CONSUMED") return GrantStatus::Consumed;
  if (s == "EXPIRED") return GrantStatus::Expired;
  if (s == "REVOKED") return GrantStatus::Revoked;
  return std::nullopt;
}

namespace {

// token status docIRI cidr issuedAt ttl consumedAt consumedFrom
std::string journal_line(const Grant& g) {
  std::string line;
  line += g.token;
  line += '\t';
  line += to_string(g.status);
  line += '\t';
  line += g.document.value();
  line += '\t';
  line += g.cidr.str();
  line += '\t';
  line += rfc3339_utc(g.issued_at);
  line += '\t';
  line += std::to_string(g.ttl_seconds);
  line += '\t';
  line += g.consumed_at ? rfc3339_utc(*g.consumed_at) : "-";
  line += '\t';
  line += g.consumed_from ? *g.consumed_from : "-";
  line += '\n';
  return line;
}

Grant parse_journal_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> f;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      f.push_back(line.substr(start));
      break;
    }
    f.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  auto bad = [&](const std::string& why) -> JournalError {
    return JournalError("grants journal line " + std::to_string(line_no) + ": " + why);
  };
  if (f.size() != 8) throw bad("expected 8 fields, got " + std::to_string(f.size()));
  if (!token_shape_ok(f[0])) throw bad("bad token");
  auto status = grant_status_from(f[1]);
  if (!status) throw bad("bad status " + f[1]);
  if (!Iri::valid(f[2])) throw bad("bad document IRI");
  auto cidr = Cidr::parse(f[3]);
  if (!cidr) throw bad("bad cidr " + f[3]);
  auto issued = parse_rfc3339_utc(f[4]);
  if (!issued) throw bad("bad issuedAt " + f[4]);
  long ttl = 0;
  try {
    std::size_t used = 0;
    ttl = std::stol(f[5], &used);
    if (used != f[5].size()) throw std::invalid_argument(f[5]);
  } catch (const std::exception&) {
    throw bad("bad ttl " + f[5]);
  }
  if (ttl < 1) throw bad("bad ttl " + f[5]);

  Grant g{f[0], Iri(f[2]), *cidr, *issued, ttl, *status, std::nullopt, std::nullopt};
  if (f[6] != "-") {
    auto at = parse_rfc3339_utc(f[6]);
    if (!at) throw bad("bad consumedAt " + f[6]);
    g.consumed_at = at;
  }
  if (f[7] != "-") g.consumed_from = f[7];
  if ((g.status == GrantStatus::Consumed) != g.consumed_at.has_value()) {
    throw bad("consumedAt must be present exactly for CONSUMED");
  }
  return g;
}

}  // namespace

std::map<std::string, Grant> GrantStore::replay(const std::filesystem::path& journal_path) {
  std::map<std::string, Grant> grants;
  auto bytes = read_file(journal_path);
  if (!bytes) return grants;
  std::size_t line_no = 0;
  std::size_t cursor = 0;
  while (cursor < bytes->size()) {
    std::size_t eol = bytes->find('\n', cursor);
    if (eol == std::string::npos) {
      // No newline: the final append was torn mid-write, which means it was
      // never acknowledged. Apply it only if it still parses whole.
      std::string tail = bytes->substr(cursor);
      ++line_no;
      try {
        Grant g = parse_journal_line(tail, line_no);
        grants.insert_or_assign(g.token, std::move(g));
      } catch (const JournalError&) {
      }
      break;
    }
    std::string line = bytes->substr(cursor, eol - cursor);
    cursor = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    Grant g = parse_journal_line(line, line_no);
    grants.insert_or_assign(g.token, std::move(g));
  }
  return grants;
}

GrantStore::GrantStore(std::filesystem::path journal_path) : path_(std::move(journal_path)) {
  grants_ = replay(path_);
  out_ = std::fopen(path_.c_str(), "a");
  if (!out_) throw IoError("cannot open grants journal " + path_.string());
}

GrantStore::~GrantStore() {
  if (out_) std::fclose(out_);
}

void GrantStore::append_locked(const Grant& g) {
  std::string line = journal_line(g);
  if (std::fwrite(line.data(), 1, line.size(), out_) != line.size() || std::fflush(out_) != 0) {
    throw IoError("grants journal append failed");
  }
}

Grant GrantStore::create(const Iri& document, const Cidr& cidr, long ttl_seconds,
                         std::time_t now) {
  std::lock_guard lock(mu_);
  std::string token = generate_token();
  while (grants_.count(token)) token = generate_token();
  Grant g{token, document, cidr, now, ttl_seconds, GrantStatus::Issued,
          std::nullopt, std::nullopt};
  append_locked(g);
  grants_.emplace(token, g);
  return g;
}

std::optional<Grant> GrantStore::find(const std::string& token) const {
  std::lock_guard lock(mu_);
  auto it = grants_.find(token);
  if (it == grants_.end()) return std::nullopt;
  return it->second;
}

bool GrantStore::consume(const std::string& token, const std::string& ip, std::time_t now) {
  std::lock_guard lock(mu_);
  auto it = grants_.find(token);
  if (it == grants_.end()) return false;
  Grant& g = it->second;
  if (g.status != GrantStatus::Issued || g.expired_by(now)) return false;
  Grant next = g;
  next.status = GrantStatus::Consumed;
  next.consumed_at = now;
  next.consumed_from = ip;
  append_locked(next);
  g = std::move(next);
  return true;
}

GrantStore::Redeem GrantStore::redeem(const std::string& token, const std::string& ip,
                                      std::time_t now, Grant* out) {
  {
    std::lock_guard lock(mu_);
    auto it = grants_.find(token);
    if (it == grants_.end()) return Redeem::NotFound;
    Grant& g = it->second;
    if (g.status != GrantStatus::Issued || g.expired_by(now)) return Redeem::Gone;
    if (!g.cidr.contains(ip)) return Redeem::Forbidden;
    Grant next = g;
    next.status = GrantStatus::Consumed;
    next.consumed_at = now;
    next.consumed_from = ip;
    append_locked(next);
    g = std::move(next);
    if (out) *out = g;
  }
  return Redeem::Ok;
}

GrantStore::Revoke GrantStore::revoke(const std::string& token) {
  std::lock_guard lock(mu_);
  auto it = grants_.find(token);
  if (it == grants_.end()) return Revoke::NotFound;
  Grant& g = it->second;
  if (g.status != GrantStatus::Issued) return Revoke::Ok;  // terminal already
  Grant next = g;
  next.status = GrantStatus::Revoked;
  append_locked(next);
  g = std::move(next);
  return Revoke::Ok;
}

std::size_t GrantStore::sweep_expired(std::time_t now) {
  std::lock_guard lock(mu_);
  std::size_t count = 0;
  for (auto& [token, g] : grants_) {
    if (g.status == GrantStatus::Issued && g.expired_by(now)) {
      Grant next = g;
      next.status = GrantStatus::Expired;
      append_locked(next);
      g = std::move(next);
      ++count;
    }
  }
  return count;
}

std::size_t GrantStore::size() const {
  std::lock_guard lock(mu_);
  return grants_.size();
}

}  // namespace vault
