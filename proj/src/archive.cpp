#include "vault/archive.hpp"

#include <set>
#include <vector>

#include "vault/ntriples.hpp"
#include "vault/sha256.hpp"
#include "vault/zipio.hpp"

namespace vault {

Graph export_subgraph(const Vocabulary& v, const Graph& g, const Iri& cid) {
  Graph out;
  for (const Triple& t : g.scan(TriplePattern{cid, std::nullopt, std::nullopt})) {
    out.insert(t);
  }
  for (const Triple& owns : g.scan(TriplePattern{cid, v.owns, std::nullopt})) {
    if (!owns.object.is_iri()) continue;
    const Iri& doc = owns.object.iri();
    for (const Triple& t : g.scan(TriplePattern{doc, std::nullopt, std::nullopt})) {
      out.insert(t);
    }
    for (const Triple& t : g.scan(TriplePattern{std::nullopt, v.issues, Term(doc)})) {
      out.insert(t);
    }
  }
  return out;
}

namespace {

std::set<std::string> hash_literals(const Vocabulary& v, const Graph& g) {
  std::set<std::string> out;
  for (const Triple& t : g.scan(TriplePattern{std::nullopt, v.hash_value, std::nullopt})) {
    if (t.object.is_literal()) out.insert(t.object.literal().lexical());
  }
  return out;
}

bool vocabulary_predicate(const Vocabulary& v, const Iri& p) {
  return p == rdf::type() || p == v.owns || p == v.issues ||
         v.is_citizen_property(p) || v.is_document_property(p);
}

}  // namespace

std::string export_profile(const Vocabulary& v, const Graph& g, const BlobStore& blobs,
                           const Iri& cid) {
  Graph sub = export_subgraph(v, g, cid);

  std::vector<ZipEntry> entries;
  entries.push_back(ZipEntry{"profile.nt", serialize(sub)});

  for (const std::string& h : hash_literals(v, sub)) {  // std::set: ascending
    auto bytes = blobs.get(h);
    if (!bytes) {
      throw ArchiveError(ArchiveError::Kind::Integrity, "referenced blob missing: " + h);
    }
    if (sha256_hex(*bytes) != h) {
      throw ArchiveError(ArchiveError::Kind::Integrity, "blob corrupted on disk: " + h);
    }
    entries.push_back(ZipEntry{"blobs/" + h, std::move(*bytes)});
  }
  return zip_pack(entries);
}

ProfileArchive parse_profile_archive(const Vocabulary& v, std::string_view zip_bytes) {
  std::vector<ZipEntry> entries;
  try {
    entries = zip_unpack(zip_bytes);
  } catch (const ZipError& e) {
    throw ArchiveError(ArchiveError::Kind::Malformed, e.what());
  }

  ProfileArchive out;
  bool have_profile = false;
  for (ZipEntry& e : entries) {
    if (e.name == "profile.nt") {
      have_profile = true;
      try {
        out.graph = parse_ntriples(e.data);
      } catch (const ParseError& pe) {
        throw ArchiveError(ArchiveError::Kind::Malformed,
                           std::string("profile.nt: ") + pe.what());
      }
      continue;
    }
    if (e.name.rfind("blobs/", 0) == 0) {
      std::string key = e.name.substr(6);
      if (!BlobStore::valid_key(key)) {
        throw ArchiveError(ArchiveError::Kind::Malformed, "unknown entry name: " + e.name);
      }
      if (sha256_hex(e.data) != key) {
        throw ArchiveError(ArchiveError::Kind::HashMismatch,
                           "entry " + e.name + " does not hash to its name");
      }
      out.blobs.emplace(std::move(key), std::move(e.data));
      continue;
    }
    throw ArchiveError(ArchiveError::Kind::Malformed, "unknown entry name: " + e.name);
  }
  if (!have_profile) {
    throw ArchiveError(ArchiveError::Kind::Malformed, "archive has no profile.nt");
  }

  for (const Triple& t : out.graph) {
    if (!vocabulary_predicate(v, t.predicate)) {
      throw ArchiveError(ArchiveError::Kind::Malformed,
                         "predicate outside the shared vocabulary: " + t.predicate.canonical());
    }
  }
  for (const std::string& h : hash_literals(v, out.graph)) {
    if (!out.blobs.count(h)) {
      throw ArchiveError(ArchiveError::Kind::Malformed,
                         "profile.nt references blob " + h + " but the archive has no such entry");
    }
  }
  return out;
}

}  // namespace vault
