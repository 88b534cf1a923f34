#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "vault/fsutil.hpp"
#include "vault/ntriples.hpp"
#include "test_util.hpp"

using namespace vault;

namespace {
Iri iri(const std::string& tail) { return Iri("http://example.org/" + tail); }
}

TEST_CASE("serialize canonical form") {
  Graph g;
  CHECK(serialize(g) == "");  // empty graph is the empty byte string

  g.insert(Triple{iri("b"), iri("p"), Term(Literal("2"))});
  g.insert(Triple{iri("a"), iri("p"), Term(Literal("1"))});
  g.insert(Triple{iri("a"), iri("p"), Term(iri("o"))});
  CHECK(serialize(g) ==
        "<http://example.org/a> <http://example.org/p> \"1\" .\n"
        "<http://example.org/a> <http://example.org/p> <http://example.org/o> .\n"
        "<http://example.org/b> <http://example.org/p> \"2\" .\n");
}

TEST_CASE("triple_line matches serialize line for a single triple") {
  Triple t{iri("s"), iri("p"), Term(Literal("a b", xsd::string_type()))};
  Graph g;
  g.insert(t);
  CHECK(triple_line(t) + "\n" == serialize(g));
}

TEST_CASE("parse accepts comments, blank lines and crlf") {
  Graph g = parse_ntriples(
      "# header comment\r\n"
      "\r\n"
      "<http://example.org/a> <http://example.org/p> \"x\" .\r\n"
      "\n"
      "<http://example.org/a> <http://example.org/p> <http://example.org/o> .\n");
  CHECK(g.size() == 2);
}

TEST_CASE("parse unescapes what serialize escapes") {
  Graph g = parse_ntriples(
      "<http://example.org/a> <http://example.org/p> \"tab\\there \\\"q\\\" \\\\ \\n\\r\\u0001\" .\n");
  auto triples = g.scan(TriplePattern{});
  REQUIRE(triples.size() == 1);
  CHECK(triples[0].object.literal().lexical() ==
        std::string("tab\there \"q\" \\ \n\r\x01"));
}

TEST_CASE("parse rejects blank nodes with position") {
  try {
    parse_ntriples("<http://example.org/a> <http://example.org/p> \"x\" .\n"
                   "_:b1 <http://example.org/p> \"y\" .\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
    CHECK(std::string(e.what()).find("blank nodes") != std::string::npos);
  }
}

TEST_CASE("parse rejects language tags with position") {
  try {
    parse_ntriples("<http://example.org/a> <http://example.org/p> \"x\"@en .\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("language tags") != std::string::npos);
  }
}

TEST_CASE("parse rejects malformed lines") {
  CHECK_THROWS_AS(parse_ntriples("<http://example.org/a> <http://example.org/p> \"x\"\n"),
                  ParseError);  // missing terminator
  CHECK_THROWS_AS(parse_ntriples("<http://example.org/a> <http://example.org/p> .\n"),
                  ParseError);  // missing object
  CHECK_THROWS_AS(parse_ntriples("<http://example.org/a> \"p\" \"x\" .\n"),
                  ParseError);  // literal predicate
  CHECK_THROWS_AS(parse_ntriples("\"s\" <http://example.org/p> \"x\" .\n"),
                  ParseError);  // literal subject
  CHECK_THROWS_AS(parse_ntriples("<http://example.org/a> <http://example.org/p> \"x .\n"),
                  ParseError);  // unterminated literal
  CHECK_THROWS_AS(parse_ntriples("<relative> <http://example.org/p> \"x\" .\n"),
                  ParseError);  // invalid iri
  CHECK_THROWS_AS(parse_ntriples("<http://example.org/a> <http://example.org/p> \"x\" . extra\n"),
                  ParseError);  // trailing garbage
  CHECK_THROWS_AS(
      parse_ntriples("<http://example.org/a> <http://example.org/p> "
                     "\"2023-02-29\"^^<http://www.w3.org/2001/XMLSchema#date> .\n"),
      ParseError);  // impossible date
}

TEST_CASE("parse error positions are 1-based") {
  try {
    parse_ntriples("<http://example.org/a> bad\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 24);  // the 'b' of "bad": 22 IRI chars, space, then it
  }
}

namespace {

Graph random_graph(std::mt19937& rng, std::size_t max_triples) {
  std::uniform_int_distribution<std::size_t> sz(0, max_triples);
  std::uniform_int_distribution<int> d100(0, 99);
  std::uniform_int_distribution<int> small(0, 7);
  std::uniform_int_distribution<int> ch(0x20, 0x7e);

  auto random_string = [&]() {
    std::uniform_int_distribution<int> len(0, 12);
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      int roll = d100(rng);
      if (roll < 6) {
        s += '\\';
      } else if (roll < 12) {
        s += '"';
      } else if (roll < 16) {
        s += '\n';
      } else if (roll < 18) {
        s += '\t';
      } else if (roll < 20) {
        s += static_cast<char>(1 + small(rng));  // control byte
      } else if (roll < 26) {
        s += "\xc3\xa9";  // two-byte utf-8 letter, keeps multibyte text in play
      } else {
        s += static_cast<char>(ch(rng));
      }
    }
    return s;
  };

  Graph g;
  std::size_t n = sz(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Iri s("http://example.org/s/" + std::to_string(small(rng)));
    Iri p("http://example.org/p/" + std::to_string(small(rng)));
    int kind = d100(rng);
    if (kind < 40) {
      g.insert(Triple{s, p, Term(Iri("http://example.org/o/" + std::to_string(small(rng))))});
    } else if (kind < 80) {
      g.insert(Triple{s, p, Term(Literal(random_string()))});
    } else if (kind < 90) {
      g.insert(Triple{s, p, Term(Literal("20" + std::to_string(small(rng)) + "0-06-1" +
                                             std::to_string(small(rng) % 10),
                                         xsd::date_type()))});
    } else {
      g.insert(Triple{s, p, Term(Literal(random_string(),
                                         Iri("http://example.org/dt/" +
                                             std::to_string(small(rng)))))});
    }
  }
  return g;
}

}  // namespace

TEST_CASE("codec round trip and determinism on random graphs") {
  std::mt19937 rng(424242);
  for (int round = 0; round < 300; ++round) {
    Graph g = random_graph(rng, 50);
    std::string bytes = serialize(g);
    Graph back = parse_ntriples(bytes);
    CHECK(back == g);
    CHECK(serialize(back) == bytes);

    // shuffling insert order never changes the serialization
    auto triples = g.scan(TriplePattern{});
    std::shuffle(triples.begin(), triples.end(), rng);
    Graph again;
    for (const Triple& t : triples) again.insert(t);
    CHECK(serialize(again) == bytes);
  }
}

TEST_CASE("save and load round trip through the filesystem") {
  testutil::TempDir dir;
  std::mt19937 rng(7);
  Graph g = random_graph(rng, 30);
  auto p = dir.path() / "store.nt";
  save(g, p);
  CHECK(load(p) == g);

  CHECK_THROWS_AS(load(dir.path() / "missing.nt"), IoError);
  write_file_atomic(dir.path() / "bad.nt", "not ntriples\n");
  CHECK_THROWS_AS(load(dir.path() / "bad.nt"), ParseError);
}
