#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "vault/http_util.hpp"
#include "vault/ntriples.hpp"
#include "vault/sha256.hpp"
#include "vault/term.hpp"
#include "vault/vocab.hpp"

namespace {

struct Ctx {
  std::string server = "http://127.0.0.1:8080";
  std::string key;
  std::string citizen;
  std::string ns = vault::Vocabulary::kDefaultNamespace;
};

httplib::Client make_client(const Ctx& ctx) {
  httplib::Client cli(ctx.server);
  cli.set_default_headers({{"Authorization", "Bearer " + ctx.key}});
  cli.set_connection_timeout(5, 0);
  cli.set_read_timeout(60, 0);
  cli.set_write_timeout(60, 0);
  return cli;
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(buf).str();
}

bool spill(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return out.good();
}

// 0 on 2xx, 1 on an HTTP error, 2 when the request never completed.
// On success the body goes to out_file when given, else to stdout.
int finish(const httplib::Result& res, const std::string& out_file = "",
           bool quiet = false) {
  if (!res) {
    std::fprintf(stderr, "transport error: %s\n", httplib::to_string(res.error()).c_str());
    return 2;
  }
  if (res->status < 200 || res->status >= 300) {
    std::fprintf(stderr, "HTTP %d: %s", res->status, res->body.c_str());
    if (res->body.empty() || res->body.back() != '\n') std::fprintf(stderr, "\n");
    return 1;
  }
  if (!out_file.empty()) {
    if (!spill(out_file, res->body)) {
      std::fprintf(stderr, "cannot write %s\n", out_file.c_str());
      return 1;
    }
  } else if (!quiet) {
    std::fwrite(res->body.data(), 1, res->body.size(), stdout);
  }
  return 0;
}

std::string guess_media_type(const std::filesystem::path& p) {
  static const std::map<std::string, std::string> by_ext = {
      {".pdf", "application/pdf"},   {".txt", "text/plain"},
      {".md", "text/markdown"},      {".png", "image/png"},
      {".jpg", "image/jpeg"},        {".jpeg", "image/jpeg"},
      {".json", "application/json"}, {".xml", "application/xml"},
      {".zip", "application/zip"},   {".html", "text/html"},
      {".nt", "application/n-triples"}};
  std::string ext = p.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto it = by_ext.find(ext);
  return it == by_ext.end() ? "application/octet-stream" : it->second;
}

const char* kNt = "application/n-triples; charset=utf-8";

vault::Iri require_citizen(const Ctx& ctx) {
  if (ctx.citizen.empty()) {
    throw std::invalid_argument("citizen IRI required (--citizen or VAULT_CITIZEN)");
  }
  return vault::Iri(ctx.citizen);
}

std::string citizen_path(const Ctx& ctx) {
  return "/citizens/" + vault::percent_encode(require_citizen(ctx).value());
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;

  CLI::App app{"vaultctl: command line client for the document vault"};
  app.require_subcommand(1);
  app.add_option("-s,--server", ctx.server, "Server base URL")->envname("VAULT_SERVER");
  app.add_option("-k,--key", ctx.key, "Citizen bearer key")->envname("VAULT_KEY");
  app.add_option("-c,--citizen", ctx.citizen, "Citizen IRI")->envname("VAULT_CITIZEN");
  app.add_option("--ns", ctx.ns, "Vocabulary namespace prefix")->envname("VAULT_NS");

  // profile
  auto* profile = app.add_subcommand("profile", "Personal data");
  profile->require_subcommand(1);
  std::optional<std::string> p_name, p_surname, p_citizenship, p_address, p_civil, p_email;
  auto* profile_set = profile->add_subcommand("set", "Replace the profile");
  profile_set->add_option("--name", p_name, "First name");
  profile_set->add_option("--surname", p_surname, "Family name");
  profile_set->add_option("--citizenship", p_citizenship, "Citizenship");
  profile_set->add_option("--address", p_address, "Postal address");
  profile_set->add_option("--civil-status", p_civil, "Civil status");
  profile_set->add_option("--email", p_email, "Email address");
  auto* profile_show = profile->add_subcommand("show", "Print the profile");

  // doc
  auto* doc = app.add_subcommand("doc", "Documents");
  doc->require_subcommand(1);
  std::string d_file, d_class, d_out;
  std::optional<std::string> d_title, d_issuer, d_expires, d_issued_on, d_media;
  uint64_t d_num = 0;
  auto* doc_add = doc->add_subcommand("add", "Upload a document with its metadata");
  doc_add->add_option("file", d_file, "Local file")->required();
  doc_add->add_option("--class", d_class, "Document class")
      ->required()
      ->check(CLI::IsMember({"national", "international", "regional", "personal"}));
  doc_add->add_option("--title", d_title, "Document title");
  doc_add->add_option("--issuer", d_issuer, "Issuing administration IRI");
  doc_add->add_option("--expires", d_expires, "Expiry date, YYYY-MM-DD");
  doc_add->add_option("--issued-on", d_issued_on, "Issue date, YYYY-MM-DD");
  doc_add->add_option("--media-type", d_media, "Override the media type guess");
  auto* doc_list = doc->add_subcommand("list", "List owned documents");
  auto* doc_get = doc->add_subcommand("get", "Download document content");
  doc_get->add_option("n", d_num, "Document number")->required();
  doc_get->add_option("--out", d_out, "Write to file instead of stdout");
  auto* doc_rm = doc->add_subcommand("rm", "Delete a document");
  doc_rm->add_option("n", d_num, "Document number")->required();

  // insights
  auto* insights = app.add_subcommand("insights", "Derived views of the record");
  insights->require_subcommand(1);
  std::optional<long> i_within;
  auto* ins_expired = insights->add_subcommand("expired", "Documents past their expiry");
  auto* ins_expiring = insights->add_subcommand("expiring", "Documents expiring soon");
  ins_expiring->add_option("--within", i_within, "Window in days");
  auto* ins_dup = insights->add_subcommand("duplicates", "Same document from two issuers");
  auto* ins_derived = insights->add_subcommand("derived", "Rule-derived facts");

  // grant
  auto* grant = app.add_subcommand("grant", "One-time access links");
  grant->require_subcommand(1);
  std::string g_doc, g_cidr, g_token;
  std::optional<long> g_ttl;
  auto* grant_create = grant->add_subcommand("create", "Mint a capability URL");
  grant_create->add_option("doc", g_doc, "Document number or IRI")->required();
  grant_create->add_option("--cidr", g_cidr, "Allowed IP range")->required();
  grant_create->add_option("--ttl", g_ttl, "Lifetime in seconds");
  auto* grant_revoke = grant->add_subcommand("revoke", "Invalidate a link");
  grant_revoke->add_option("token", g_token, "Grant token")->required();

  // portability
  std::string e_out, i_zip;
  auto* exp = app.add_subcommand("export", "Download the profile archive");
  exp->add_option("--out", e_out, "Target zip file")->required();
  auto* imp = app.add_subcommand("import", "Upload a profile archive");
  imp->add_option("zip", i_zip, "Archive file")->required();

  // query
  std::string q_text;
  auto* query = app.add_subcommand("query", "Run a select query");
  query->add_option("q", q_text, "Query text, or a file containing it")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    vault::Vocabulary v(ctx.ns);

    if (*profile_set) {
      vault::Iri cid = require_citizen(ctx);
      std::string body =
          vault::triple_line({cid, vault::rdf::type(), vault::Term(v.citizen)}) + "\n";
      auto field = [&](const vault::Iri& p, const std::optional<std::string>& val) {
        if (val) {
          body += vault::triple_line({cid, p, vault::Term(vault::Literal(*val))}) + "\n";
        }
      };
      field(v.name, p_name);
      field(v.surname, p_surname);
      field(v.citizenship, p_citizenship);
      field(v.address, p_address);
      field(v.civil_status, p_civil);
      field(v.email, p_email);
      auto cli = make_client(ctx);
      return finish(cli.Post(citizen_path(ctx), body, kNt));
    }
    if (*profile_show) {
      auto cli = make_client(ctx);
      return finish(cli.Get(citizen_path(ctx)));
    }

    if (*doc_add) {
      vault::Iri cid = require_citizen(ctx);
      auto bytes = slurp(d_file);
      if (!bytes) {
        std::fprintf(stderr, "cannot read %s\n", d_file.c_str());
        return 1;
      }
      std::map<std::string, const vault::Iri*> classes = {
          {"national", &v.national_document},
          {"international", &v.international_document},
          {"regional", &v.regional_document},
          {"personal", &v.personal_document}};
      const vault::Iri& cls = *classes.at(d_class);
      std::filesystem::path fpath(d_file);
      std::string media = d_media ? *d_media : guess_media_type(fpath);

      vault::Iri nu("urn:new");
      std::string body = vault::triple_line({nu, vault::rdf::type(), vault::Term(cls)}) + "\n";
      auto lit = [&](const vault::Iri& p, const std::string& s) {
        body += vault::triple_line({nu, p, vault::Term(vault::Literal(s))}) + "\n";
      };
      lit(v.file_name, fpath.filename().string());
      lit(v.media_type, media);
      lit(v.hash_value, vault::sha256_hex(*bytes));
      if (d_title) lit(v.title, *d_title);
      // dates validate locally; a bad --expires never reaches the wire
      if (d_expires) {
        body += vault::triple_line(
                    {nu, v.expires,
                     vault::Term(vault::Literal(*d_expires, vault::xsd::date_type()))}) +
                "\n";
      }
      if (d_issued_on) {
        body += vault::triple_line(
                    {nu, v.issued_on,
                     vault::Term(vault::Literal(*d_issued_on, vault::xsd::date_type()))}) +
                "\n";
      }
      body += vault::triple_line({cid, v.owns, vault::Term(nu)}) + "\n";
      if (d_issuer) {
        body += vault::triple_line({vault::Iri(*d_issuer), v.issues, vault::Term(nu)}) + "\n";
      }

      auto cli = make_client(ctx);
      auto meta = cli.Put("/documents", body, kNt);
      if (!meta || meta->status != 201) return finish(meta, "", true);
      std::string loc = meta->get_header_value("Location");
      if (loc.empty()) {
        std::fprintf(stderr, "server sent no Location header\n");
        return 1;
      }
      auto content = cli.Put(loc + "/content", *bytes, media);
      int rc = finish(content, "", true);
      if (rc != 0) return rc;
      std::fwrite(meta->body.data(), 1, meta->body.size(), stdout);
      return 0;
    }
    if (*doc_list) {
      auto cli = make_client(ctx);
      return finish(cli.Get(citizen_path(ctx) + "/documents"));
    }
    if (*doc_get) {
      auto cli = make_client(ctx);
      return finish(cli.Get("/documents/" + std::to_string(d_num) + "/content"), d_out);
    }
    if (*doc_rm) {
      auto cli = make_client(ctx);
      return finish(cli.Delete("/documents/" + std::to_string(d_num)));
    }

    if (*ins_expired || *ins_expiring || *ins_dup || *ins_derived) {
      std::string path = "/insights/";
      if (*ins_expired) path += "expired";
      if (*ins_expiring) {
        path += "expiring";
        if (i_within) path += "?within=" + std::to_string(*i_within);
      }
      if (*ins_dup) path += "duplicates";
      if (*ins_derived) path += "derived";
      auto cli = make_client(ctx);
      return finish(cli.Get(path));
    }

    if (*grant_create) {
      std::string body = g_doc + "\t" + g_cidr;
      if (g_ttl) body += "\t" + std::to_string(*g_ttl);
      auto cli = make_client(ctx);
      return finish(cli.Post("/grants", body, "text/tab-separated-values; charset=utf-8"));
    }
    if (*grant_revoke) {
      auto cli = make_client(ctx);
      return finish(cli.Delete("/grants/" + g_token));
    }

    if (*exp) {
      auto cli = make_client(ctx);
      return finish(cli.Get("/export"), e_out);
    }
    if (*imp) {
      auto bytes = slurp(i_zip);
      if (!bytes) {
        std::fprintf(stderr, "cannot read %s\n", i_zip.c_str());
        return 1;
      }
      auto cli = make_client(ctx);
      return finish(cli.Post("/import", *bytes, "application/zip"));
    }

    if (*query) {
      std::string text = q_text;
      std::error_code ec;
      if (std::filesystem::is_regular_file(q_text, ec)) {
        auto from_file = slurp(q_text);
        if (!from_file) {
          std::fprintf(stderr, "cannot read %s\n", q_text.c_str());
          return 1;
        }
        text = *from_file;
      }
      auto cli = make_client(ctx);
      return finish(cli.Post("/query", text, "text/plain; charset=utf-8"));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 0;
}
