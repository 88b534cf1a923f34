#include "vault/service.hpp"

#include <algorithm>
#include <array>
#include <chrono>

#include "vault/archive.hpp"
#include "vault/fsutil.hpp"
#include "vault/ntriples.hpp"
#include "vault/sha256.hpp"
#include "vault/views.hpp"

namespace vault {

namespace {

constexpr const char* kNtriplesType = "application/n-triples; charset=utf-8";
constexpr const char* kTextType = "text/plain; charset=utf-8";
constexpr const char* kTsvType = "text/tab-separated-values; charset=utf-8";

// Thrown inside handlers, mapped onto the response by the guard wrapper.
struct HttpError {
  int status;
  std::string message;
};

void set_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(message + "\n", kTextType);
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r' || s[a] == '\n')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r' || s[b - 1] == '\n')) --b;
  return std::string(s.substr(a, b - a));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::optional<uint64_t> parse_u64(std::string_view s) {
  if (!all_digits(s) || s.size() > 19) return std::nullopt;
  uint64_t v = 0;
  for (char c : s) v = v * 10 + static_cast<uint64_t>(c - '0');
  return v;
}

// Serializes a list of triples that is not already a Graph.
std::string serialize_triples(const std::vector<Triple>& triples) {
  Graph g;
  for (const Triple& t : triples) g.insert(t);
  return serialize(g);
}

}  // namespace

VaultService::VaultService(ServiceConfig cfg, std::function<std::time_t()> clock)
    : cfg_(std::move(cfg)),
      vocab_([&]() -> Vocabulary {
        try {
          return Vocabulary(cfg_.ns);
        } catch (const std::invalid_argument& e) {
          throw StartupError(std::string("bad namespace: ") + e.what());
        }
      }()),
      clock_(clock ? std::move(clock) : [] { return std::time(nullptr); }) {
  if (cfg_.data_dir.empty()) throw StartupError("data directory not configured");
  if (!Iri::valid(cfg_.base_iri + "/doc/1")) {
    throw StartupError("base IRI does not form valid document IRIs: " + cfg_.base_iri);
  }
  if (cfg_.default_grant_ttl_seconds < 1) throw StartupError("default grant TTL must be >= 1");
  if (cfg_.expiry_window_days_default < 1) throw StartupError("default expiry window must be >= 1");

  try {
    ensure_dir(cfg_.data_dir);
    blobs_ = std::make_unique<BlobStore>(cfg_.data_dir / "blobs");
  } catch (const IoError& e) {
    throw StartupError(e.what());
  }

  if (std::filesystem::exists(store_path())) {
    try {
      graph_ = load(store_path());
    } catch (const std::exception& e) {
      throw StartupError("cannot load " + store_path().string() + ": " + e.what());
    }
  }

  bool counter_present = std::filesystem::exists(counter_path());
  if (counter_present) {
    std::string raw = read_file(counter_path()).value_or("");
    auto n = parse_u64(trim(raw));
    if (!n || *n < 1) {
      throw StartupError("malformed counter file " + counter_path().string());
    }
    next_doc_id_ = *n;
  }

  std::filesystem::path rules_path = cfg_.rules_file;
  if (rules_path.empty()) {
    rules_path = cfg_.data_dir / "rules.txt";
    if (!std::filesystem::exists(rules_path)) {
      try {
        write_file_atomic(rules_path, default_rules_text(vocab_));
      } catch (const IoError& e) {
        throw StartupError(e.what());
      }
    }
  } else if (!std::filesystem::exists(rules_path)) {
    throw StartupError("rules file not found: " + rules_path.string());
  }
  try {
    rules_ = parse_rules(read_file_or_throw(rules_path));
  } catch (const std::exception& e) {
    throw StartupError("cannot load rules " + rules_path.string() + ": " + e.what());
  }

  try {
    grants_ = std::make_unique<GrantStore>(cfg_.data_dir / "grants.log");
  } catch (const std::exception& e) {
    throw StartupError(e.what());
  }

  // seed the taxonomy; persist only when it actually changed something
  bool changed = false;
  for (const Triple& t : vocab_.bootstrap()) changed |= graph_.insert(t);
  for (const Triple& t : rules_.axioms) changed |= graph_.insert(t);
  try {
    if (changed || !std::filesystem::exists(store_path())) save(graph_, store_path());
    if (!counter_present) {
      write_file_atomic(counter_path(), std::to_string(next_doc_id_) + "\n");
    }
  } catch (const IoError& e) {
    throw StartupError(e.what());
  }

  install_routes();
}

int VaultService::bind_port() {
  if (cfg_.listen_port == 0) {
    bound_port_ = server_.bind_to_any_port(cfg_.listen_host);
  } else {
    bound_port_ = server_.bind_to_port(cfg_.listen_host, cfg_.listen_port) ? cfg_.listen_port : -1;
  }
  return bound_port_;
}

bool VaultService::listen_after_bind() { return server_.listen_after_bind(); }

bool VaultService::authorized(const httplib::Request& req) const {
  return req.get_header_value("Authorization") == "Bearer " + cfg_.citizen_key;
}

std::string VaultService::client_ip(const httplib::Request& req) const {
  if (cfg_.trust_proxy_header) {
    std::string fwd = req.get_header_value("X-Forwarded-For");
    if (!fwd.empty()) {
      std::size_t comma = fwd.find(',');
      return trim(comma == std::string::npos ? fwd : fwd.substr(0, comma));
    }
  }
  return req.remote_addr;
}

Date VaultService::today_utc() const {
  auto tp = std::chrono::sys_seconds(std::chrono::seconds(clock_()));
  return Date::from_days(std::chrono::floor<std::chrono::days>(tp));
}

Iri VaultService::doc_iri(uint64_t n) const {
  return Iri(cfg_.base_iri + "/doc/" + std::to_string(n));
}

std::string VaultService::grant_url_base() const {
  if (!cfg_.external_base_url.empty()) return cfg_.external_base_url;
  return "http://" + cfg_.listen_host + ":" + std::to_string(port());
}

void VaultService::commit_graph(Graph g) {
  save(g, store_path());
  graph_ = std::move(g);
}

void VaultService::commit_counter(uint64_t next) {
  write_file_atomic(counter_path(), std::to_string(next) + "\n");
  next_doc_id_ = next;
}

void VaultService::install_routes() {
  using httplib::Request;
  using httplib::Response;

  // Wraps a handler with auth (unless open) and error mapping.
  auto route = [this](bool open, std::function<void(const Request&, Response&)> fn) {
    return [this, open, fn = std::move(fn)](const Request& req, Response& res) {
      if (!open && !authorized(req)) {
        set_error(res, 401, "missing or invalid bearer key");
        return;
      }
      try {
        fn(req, res);
      } catch (const HttpError& e) {
        set_error(res, e.status, e.message);
      } catch (const ParseError& e) {
        set_error(res, 400, e.what());
      } catch (const QueryParseError& e) {
        set_error(res, 400, e.what());
      } catch (const InvalidWindow& e) {
        set_error(res, 400, e.what());
      } catch (const ArchiveError& e) {
        int status = e.kind() == ArchiveError::Kind::HashMismatch ? 409
                     : e.kind() == ArchiveError::Kind::Integrity  ? 500
                                                                  : 400;
        set_error(res, status, e.what());
      } catch (const std::exception& e) {
        set_error(res, 500, e.what());
      }
    };
  };

  auto parse_iri_or_400 = [](const std::string& raw) {
    if (!Iri::valid(raw)) throw HttpError{400, "invalid IRI: " + raw};
    return Iri(raw);
  };

  auto doc_from_match = [this](const Request& req) {
    auto n = parse_u64(req.matches[1].str());
    if (!n) throw HttpError{404, "no such document"};
    return doc_iri(*n);
  };

  // --- citizens ---

  server_.Get("/citizens/(.+)/documents", route(false, [=, this](const Request& req, Response& res) {
    Iri cid = parse_iri_or_400(req.matches[1].str());
    std::shared_lock lock(mu_);
    if (!graph_.contains(Triple{cid, rdf::type(), Term(vocab_.citizen)})) {
      throw HttpError{404, "unknown citizen"};
    }
    res.set_content(serialize_triples(graph_.scan(TriplePattern{cid, vocab_.owns, std::nullopt})),
                    kNtriplesType);
  }));

  server_.Get("/citizens/(.+)", route(false, [=, this](const Request& req, Response& res) {
    Iri cid = parse_iri_or_400(req.matches[1].str());
    std::shared_lock lock(mu_);
    if (!graph_.contains(Triple{cid, rdf::type(), Term(vocab_.citizen)})) {
      throw HttpError{404, "unknown citizen"};
    }
    res.set_content(serialize_triples(graph_.scan(TriplePattern{cid, std::nullopt, std::nullopt})),
                    kNtriplesType);
  }));

  server_.Post("/citizens/(.+)", route(false, [=, this](const Request& req, Response& res) {
    Iri cid = parse_iri_or_400(req.matches[1].str());
    Graph body = parse_ntriples(req.body);
    for (const Triple& t : body) {
      if (!(t.subject == cid)) {
        throw HttpError{400, "triple about foreign subject " + t.subject.canonical()};
      }
      if (!(t.predicate == rdf::type()) && !vocab_.is_citizen_property(t.predicate)) {
        throw HttpError{400, "unknown profile property " + t.predicate.canonical()};
      }
    }

    std::unique_lock lock(mu_);
    Graph g = graph_;
    auto owned = g.scan(TriplePattern{cid, vocab_.owns, std::nullopt});
    g.remove_subject(cid, {});
    for (const Triple& t : owned) g.insert(t);
    for (const Triple& t : body) g.insert(t);
    g.insert(Triple{cid, rdf::type(), Term(vocab_.citizen)});
    commit_graph(std::move(g));
    res.status = 204;
  }));

  // --- documents ---

  server_.Put("/documents", route(false, [=, this](const Request& req, Response& res) {
    static const Iri placeholder("urn:new");
    Graph body = parse_ntriples(req.body);
    if (body.empty()) throw HttpError{400, "empty document description"};

    std::vector<Triple> subject_triples;
    std::vector<Triple> incoming;
    for (const Triple& t : body) {
      if (t.subject == placeholder) {
        subject_triples.push_back(t);
      } else if (t.object.is_iri() && t.object.iri() == placeholder) {
        incoming.push_back(t);
      } else {
        throw HttpError{400, "triple does not involve <urn:new>: " + triple_line(t)};
      }
    }

    // subject side: one type, single-valued known properties
    std::map<std::string, int> seen;
    std::optional<Iri> doc_class;
    std::map<Iri, Term> props;
    for (const Triple& t : subject_triples) {
      if (t.predicate == rdf::type()) {
        if (!t.object.is_iri()) throw HttpError{400, "document class must be an IRI"};
        if (doc_class) throw HttpError{400, "multiple document classes"};
        doc_class = t.object.iri();
        continue;
      }
      if (!vocab_.is_document_property(t.predicate)) {
        throw HttpError{400, "unknown document property " + t.predicate.canonical()};
      }
      if (++seen[t.predicate.value()] > 1) {
        throw HttpError{400, "multiple values for " + t.predicate.canonical()};
      }
      props.emplace(t.predicate, t.object);
    }
    if (!doc_class) throw HttpError{400, "missing rdf:type"};

    auto string_prop = [&](const Iri& p, bool required) -> std::optional<std::string> {
      auto it = props.find(p);
      if (it == props.end()) {
        if (required) throw HttpError{400, "missing mandatory property " + p.canonical()};
        return std::nullopt;
      }
      if (!it->second.is_literal() || !it->second.literal().is_string()) {
        throw HttpError{400, p.canonical() + " must be a string literal"};
      }
      return it->second.literal().lexical();
    };
    std::string hash = *string_prop(vocab_.hash_value, true);
    string_prop(vocab_.file_name, true);
    string_prop(vocab_.media_type, true);
    string_prop(vocab_.title, false);
    if (!is_hex_hash(hash)) {
      throw HttpError{400, "malformed hash value (need 64-char lowercase hex)"};
    }
    for (const Iri* p : {&vocab_.expires, &vocab_.issued_on}) {
      auto it = props.find(*p);
      if (it != props.end() &&
          (!it->second.is_literal() || !it->second.literal().is_date())) {
        throw HttpError{400, p->canonical() + " must be an xsd:date literal"};
      }
    }

    // incoming side: exactly one owner, at most one issuer
    std::optional<Iri> owner;
    std::optional<Iri> issuer;
    for (const Triple& t : incoming) {
      if (t.predicate == vocab_.owns) {
        if (owner) throw HttpError{400, "multiple owners"};
        owner = t.subject;
      } else if (t.predicate == vocab_.issues) {
        if (issuer) throw HttpError{400, "multiple issuers"};
        issuer = t.subject;
      } else {
        throw HttpError{400, "unexpected incoming property " + t.predicate.canonical()};
      }
    }
    if (!owner) throw HttpError{400, "missing owner (need one gov:owns triple)"};

    std::unique_lock lock(mu_);
    if (!graph_.contains(Triple{*owner, rdf::type(), Term(vocab_.citizen)})) {
      throw HttpError{400, "owner is not a known citizen: " + owner->canonical()};
    }
    if (!document_classes(vocab_, graph_).count(*doc_class)) {
      throw HttpError{400, "not a document class: " + doc_class->canonical()};
    }

    uint64_t n = next_doc_id_;
    Iri minted = doc_iri(n);
    Graph g = graph_;
    for (const Triple& t : subject_triples) g.insert(Triple{minted, t.predicate, t.object});
    for (const Triple& t : incoming) g.insert(Triple{t.subject, t.predicate, Term(minted)});
    commit_counter(n + 1);
    commit_graph(std::move(g));

    res.status = 201;
    res.set_header("Location", "/documents/" + std::to_string(n));
    res.set_content(minted.value() + "\n", kTextType);
  }));

  server_.Put("/documents/([0-9]+)/content", route(false, [=, this](const Request& req, Response& res) {
    Iri doc = doc_from_match(req);
    std::unique_lock lock(mu_);
    auto hashes = graph_.scan(TriplePattern{doc, vocab_.hash_value, std::nullopt});
    if (hashes.empty() || !hashes.front().object.is_literal()) {
      throw HttpError{404, "no such document"};
    }
    const std::string& declared = hashes.front().object.literal().lexical();
    std::string computed = sha256_hex(req.body);
    if (computed != declared) {
      throw HttpError{409, "hash mismatch: declared " + declared + ", computed " + computed};
    }
    blobs_->put(req.body);
    res.status = 204;
  }));

  server_.Get("/documents/([0-9]+)/content", route(false, [=, this](const Request& req, Response& res) {
    Iri doc = doc_from_match(req);
    std::shared_lock lock(mu_);
    auto hashes = graph_.scan(TriplePattern{doc, vocab_.hash_value, std::nullopt});
    if (hashes.empty() || !hashes.front().object.is_literal()) {
      throw HttpError{404, "no such document"};
    }
    const std::string& declared = hashes.front().object.literal().lexical();
    auto bytes = blobs_->get(declared);
    if (!bytes) throw HttpError{404, "content not uploaded"};
    if (sha256_hex(*bytes) != declared) {
      throw HttpError{500, "integrity failure: stored content does not match its hash"};
    }
    std::string media = "application/octet-stream";
    auto mt = graph_.scan(TriplePattern{doc, vocab_.media_type, std::nullopt});
    if (!mt.empty() && mt.front().object.is_literal()) {
      media = mt.front().object.literal().lexical();
    }
    res.set_content(std::move(*bytes), media);
  }));

  server_.Get("/documents/([0-9]+)", route(false, [=, this](const Request& req, Response& res) {
    Iri doc = doc_from_match(req);
    std::shared_lock lock(mu_);
    Graph g;
    for (const Triple& t : graph_.scan(TriplePattern{doc, std::nullopt, std::nullopt})) g.insert(t);
    for (const Triple& t : graph_.scan(TriplePattern{std::nullopt, vocab_.owns, Term(doc)})) g.insert(t);
    for (const Triple& t : graph_.scan(TriplePattern{std::nullopt, vocab_.issues, Term(doc)})) g.insert(t);
    if (g.empty()) throw HttpError{404, "no such document"};
    res.set_content(serialize(g), kNtriplesType);
  }));

  server_.Delete("/documents/([0-9]+)", route(false, [=, this](const Request& req, Response& res) {
    Iri doc = doc_from_match(req);
    std::unique_lock lock(mu_);

    std::vector<std::string> doomed_hashes;
    for (const Triple& t : graph_.scan(TriplePattern{doc, vocab_.hash_value, std::nullopt})) {
      if (t.object.is_literal()) doomed_hashes.push_back(t.object.literal().lexical());
    }

    Graph g = graph_;
    std::array<Iri, 2> incoming{vocab_.owns, vocab_.issues};
    if (g.remove_subject(doc, incoming) > 0) {
      commit_graph(std::move(g));
      // drop blobs nothing references any more
      for (const std::string& h : doomed_hashes) {
        if (graph_.scan(TriplePattern{std::nullopt, vocab_.hash_value, Term(Literal(h))}).empty()) {
          blobs_->remove(h);
        }
      }
    }
    res.status = 204;  // idempotent: deleting the absent is fine
  }));

  // --- insights ---

  server_.Get("/insights/expired", route(false, [=, this](const Request&, Response& res) {
    std::shared_lock lock(mu_);
    std::string out;
    for (const Iri& d : expired_documents(vocab_, graph_, rules_.rules, today_utc())) {
      out += d.canonical();
      out += '\n';
    }
    res.set_content(out, kTextType);
  }));

  server_.Get("/insights/expiring", route(false, [=, this](const Request& req, Response& res) {
    long window = cfg_.expiry_window_days_default;
    if (req.has_param("within")) {
      auto w = parse_u64(req.get_param_value("within"));
      if (!w || *w < 1 || *w > 1000000) throw HttpError{400, "bad within parameter"};
      window = static_cast<long>(*w);
    }
    std::shared_lock lock(mu_);
    std::string out;
    for (const auto& [d, e] : expiring_within(vocab_, graph_, rules_.rules, today_utc(), window)) {
      out += d.canonical();
      out += '\t';
      out += e.str();
      out += '\n';
    }
    res.set_content(out, kTextType);
  }));

  server_.Get("/insights/duplicates", route(false, [=, this](const Request&, Response& res) {
    std::shared_lock lock(mu_);
    std::string out;
    for (const auto& [d1, d2] : duplicate_documents(vocab_, graph_, rules_.rules)) {
      out += d1.canonical();
      out += ' ';
      out += d2.canonical();
      out += '\n';
    }
    res.set_content(out, kTextType);
  }));

  server_.Get("/insights/derived", route(false, [=, this](const Request&, Response& res) {
    std::shared_lock lock(mu_);
    std::string out;
    for (const Triple& t : derive_status(graph_, rules_.rules)) {
      out += triple_line(t);
      out += '\n';
    }
    res.set_content(out, kNtriplesType);
  }));

  server_.Post("/query", route(false, [=, this](const Request& req, Response& res) {
    Query q = parse_query(req.body);
    std::shared_lock lock(mu_);
    auto bindings = select(graph_, q, rules_.rules, today_utc());

    std::string out;
    for (std::size_t i = 0; i < q.select_vars.size(); ++i) {
      if (i) out += '\t';
      out += q.select_vars[i];
    }
    out += '\n';
    for (const Binding& b : bindings) {
      for (std::size_t i = 0; i < q.select_vars.size(); ++i) {
        if (i) out += '\t';
        out += b.at(q.select_vars[i]).canonical();
      }
      out += '\n';
    }
    res.set_content(out, kTsvType);
  }));

  // --- grants ---

  server_.Post("/grants", route(false, [=, this](const Request& req, Response& res) {
    std::time_t now = clock_();
    std::unique_lock lock(mu_);
    grants_->sweep_expired(now);

    std::string body = trim(req.body);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = body.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(body.substr(start));
        break;
      }
      fields.push_back(body.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw HttpError{400, "expected docIRI<TAB>cidr<TAB>ttlSeconds?"};
    }

    // the document field takes a full IRI or a bare decimal id
    std::optional<Iri> doc;
    if (auto n = parse_u64(fields[0])) {
      doc = doc_iri(*n);
    } else if (Iri::valid(fields[0])) {
      doc = Iri(fields[0]);
    } else {
      throw HttpError{400, "bad document field: " + fields[0]};
    }

    auto cidr = Cidr::parse(fields[1]);
    if (!cidr) throw HttpError{400, "bad cidr: " + fields[1]};

    long ttl = cfg_.default_grant_ttl_seconds;
    if (fields.size() == 3 && !fields[2].empty()) {
      auto t = parse_u64(fields[2]);
      if (!t || *t < 1 || *t > 100000000) throw HttpError{400, "bad ttl: " + fields[2]};
      ttl = static_cast<long>(*t);
    }

    auto hashes = graph_.scan(TriplePattern{*doc, vocab_.hash_value, std::nullopt});
    if (hashes.empty() || !hashes.front().object.is_literal() ||
        !blobs_->has(hashes.front().object.literal().lexical())) {
      throw HttpError{404, "document unknown or has no uploaded content"};
    }

    Grant g = grants_->create(*doc, *cidr, ttl, now);
    res.status = 201;
    res.set_content(grant_url_base() + "/grants/" + g.token + "\n", kTextType);
  }));

  server_.Get("/grants/([A-Za-z0-9]+)", route(true, [=, this](const Request& req, Response& res) {
    std::string token = req.matches[1].str();
    std::time_t now = clock_();
    std::unique_lock lock(mu_);

    auto grant = grants_->find(token);
    if (!grant) throw HttpError{404, "unknown grant"};
    if (grant->status != GrantStatus::Issued || grant->expired_by(now)) {
      throw HttpError{410, "grant is no longer redeemable"};
    }
    std::string ip = client_ip(req);
    if (!grant->cidr.contains(ip)) {
      throw HttpError{403, "client address outside the granted range"};
    }

    // resolve the document before consuming; failure must not burn the grant
    auto hashes = graph_.scan(TriplePattern{grant->document, vocab_.hash_value, std::nullopt});
    if (hashes.empty() || !hashes.front().object.is_literal()) {
      throw HttpError{404, "granted document no longer exists"};
    }
    const std::string& declared = hashes.front().object.literal().lexical();
    auto bytes = blobs_->get(declared);
    if (!bytes) throw HttpError{404, "granted document has no content"};
    if (sha256_hex(*bytes) != declared) {
      throw HttpError{500, "integrity failure: stored content does not match its hash"};
    }

    if (!grants_->consume(token, ip, now)) {
      throw HttpError{410, "grant is no longer redeemable"};
    }

    std::string media = "application/octet-stream";
    auto mt = graph_.scan(TriplePattern{grant->document, vocab_.media_type, std::nullopt});
    if (!mt.empty() && mt.front().object.is_literal()) {
      media = mt.front().object.literal().lexical();
    }
    res.set_content(std::move(*bytes), media);
  }));

  server_.Delete("/grants/([A-Za-z0-9]+)", route(false, [=, this](const Request& req, Response& res) {
    if (grants_->revoke(req.matches[1].str()) == GrantStore::Revoke::NotFound) {
      throw HttpError{404, "unknown grant"};
    }
    res.status = 204;
  }));

  // --- portability ---

  server_.Get("/export", route(false, [=, this](const Request& req, Response& res) {
    std::shared_lock lock(mu_);
    Iri cid = [&]() -> Iri {
      if (req.has_param("citizen")) {
        std::string raw = req.get_param_value("citizen");
        if (!Iri::valid(raw)) throw HttpError{400, "invalid citizen IRI: " + raw};
        return Iri(raw);
      }
      auto citizens = graph_.scan(TriplePattern{std::nullopt, rdf::type(), Term(vocab_.citizen)});
      if (citizens.empty()) throw HttpError{404, "no citizen in the store"};
      if (citizens.size() > 1) {
        throw HttpError{400, "several citizens in the store; pass ?citizen=<iri>"};
      }
      return citizens.front().subject;
    }();
    res.set_content(export_profile(vocab_, graph_, *blobs_, cid), "application/zip");
  }));

  server_.Post("/import", route(false, [=, this](const Request& req, Response& res) {
    ProfileArchive archive = parse_profile_archive(vocab_, req.body);

    std::unique_lock lock(mu_);
    Graph g = graph_;
    for (const Triple& t : archive.graph) g.insert(t);

    // keep minting unique: skip past any imported {base}/doc/{n}
    uint64_t max_seen = 0;
    std::string prefix = cfg_.base_iri + "/doc/";
    auto consider = [&](const Iri& iri) {
      if (iri.value().rfind(prefix, 0) != 0) return;
      if (auto n = parse_u64(iri.value().substr(prefix.size()))) {
        max_seen = std::max(max_seen, *n);
      }
    };
    for (const Triple& t : archive.graph) {
      consider(t.subject);
      if (t.object.is_iri()) consider(t.object.iri());
    }

    for (const auto& [key, bytes] : archive.blobs) blobs_->put(bytes);
    if (max_seen >= next_doc_id_) commit_counter(max_seen + 1);
    commit_graph(std::move(g));
    res.status = 204;
  }));
}

}  // namespace vault
