#include "vault/fsutil.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace vault {

namespace {
std::atomic<unsigned> tmp_seq{0};

std::string errno_text() { return std::strerror(errno); }
}  // namespace

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

std::string read_file_or_throw(const std::filesystem::path& p) {
  auto bytes = read_file(p);
  if (!bytes) throw IoError("cannot read " + p.string());
  return std::move(*bytes);
}

void write_file_atomic(const std::filesystem::path& p, std::string_view bytes) {
  auto tmp = p;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(tmp_seq.fetch_add(1));

  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw IoError("cannot open " + tmp.string() + ": " + errno_text());

  const char* data = bytes.data();
  std::size_t left = bytes.size();
  while (left > 0) {
    ssize_t n = ::write(fd, data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      int saved = errno;
      ::close(fd);
      ::unlink(tmp.c_str());
      throw IoError("write to " + tmp.string() + " failed: " + std::strerror(saved));
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  ::close(fd);

  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("rename to " + p.string() + " failed: " + ec.message());
  }
}

void ensure_dir(const std::filesystem::path& p) {
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw IoError("cannot create directory " + p.string() + ": " + ec.message());
  if (!std::filesystem::is_directory(p)) {
    throw IoError(p.string() + " is not a directory");
  }
}

}  // namespace vault
