#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vault/blobstore.hpp"
#include "vault/graph.hpp"
#include "vault/vocab.hpp"

namespace vault {

class ArchiveError : public std::runtime_error {
public:
  // Malformed: structural/parse problems. HashMismatch: an entry whose bytes
  // do not hash to its name. Integrity: export-side blob damage or absence.
  enum class Kind { Malformed, HashMismatch, Integrity };

  ArchiveError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

// Validated archive content: the profile subgraph plus blobs keyed by hash.
struct ProfileArchive {
  Graph graph;
  std::map<std::string, std::string> blobs;
};

// The triples a citizen's archive carries: cid's subject triples, and per
// owned document its subject triples plus the owning and issuing edges.
Graph export_subgraph(const Vocabulary& v, const Graph& g, const Iri& cid);

// Deterministic zip bytes for the citizen's record: `profile.nt` first, then
// `blobs/<hash>` entries ascending. Throws Integrity when an exported
// hashValue has no intact blob.
std::string export_profile(const Vocabulary& v, const Graph& g, const BlobStore& blobs,
                           const Iri& cid);

// Unpacks and fully validates an uploaded archive before anything mutates:
// entry whitelist, profile.nt parse, vocabulary whitelist, blob name/content
// hashes, and blob coverage of every hashValue literal.
ProfileArchive parse_profile_archive(const Vocabulary& v, std::string_view zip_bytes);

}  // namespace vault
