#include "lgs/registry.hpp"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iterator>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "lgs/error.hpp"

namespace lgs {
namespace {

template <class T>
std::string key_of(const T& elem) {
  const auto enc = elem.encode();
  return std::string(enc.begin(), enc.end());
}

std::uint32_t crc_of(ByteView row) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, row.data(), static_cast<uInt>(row.size())));
}

[[noreturn]] void storage_failure(const std::string& what) {
  throw Error(ErrorCode::kStorageFailure, what + ": " + std::strerror(errno));
}

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorCode::kCorruptRegistry, "registry corrupt: " + what);
}

class FileHandle {
 public:
  FileHandle() = default;
  explicit FileHandle(int fd) : fd_(fd) {}
  FileHandle(FileHandle&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  FileHandle& operator=(FileHandle&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  ~FileHandle() { reset(); }

  int get() const { return fd_; }
  explicit operator bool() const { return fd_ >= 0; }

  void write_all(ByteView data) const {
    std::size_t done = 0;
    while (done < data.size()) {
      ssize_t n = ::write(fd_, data.data() + done, data.size() - done);
      if (n < 0) {
        if (errno == EINTR) continue;
        storage_failure("registry write");
      }
      done += static_cast<std::size_t>(n);
    }
  }
  void sync() const {
    if (::fsync(fd_) != 0) storage_failure("registry fsync");
  }

 private:
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }
  int fd_ = -1;
};

}  // namespace

Bytes RegistryEntry::encode() const {
  return ByteWriter()
      .u64be(index)
      .elem(a)
      .elem(x)
      .elem(y_pub)
      .u64be(static_cast<std::uint64_t>(issued_at))
      .take();
}

RegistryEntry RegistryEntry::decode(ByteView bytes) {
  ByteReader in(bytes);
  RegistryEntry e;
  e.index = in.u64be();
  e.a = in.elem<G1>();
  e.x = in.elem<Scalar>();
  e.y_pub = in.elem<G1>();
  e.issued_at = static_cast<std::int64_t>(in.u64be());
  in.finish();
  return e;
}

struct Registry::Impl {
  mutable std::shared_mutex mu;
  std::vector<RegistryEntry> rows;
  std::unordered_map<std::string, std::size_t> by_a;
  std::unordered_map<std::string, std::size_t> by_y;
  std::unordered_set<std::string> xs;
  FileHandle file;  // empty for in-memory registries

  // Caller holds the write lock (or has exclusive access during replay).
  void insert(RegistryEntry e) {
    const std::size_t pos = rows.size();
    by_a.emplace(key_of(e.a), pos);
    by_y.emplace(key_of(e.y_pub), pos);
    xs.insert(key_of(e.x));
    rows.push_back(std::move(e));
  }

  void replay(ByteView data) {
    if (data.size() < kMagic.size() ||
        std::memcmp(data.data(), kMagic.data(), kMagic.size()) != 0)
      corrupt("bad magic");
    ByteReader in(data.subspan(kMagic.size()));
    while (in.remaining() > 0) {
      try {
        const std::uint32_t len = in.u32be();
        ByteView row = in.take(len);
        if (in.u32be() != crc_of(row)) corrupt("CRC mismatch in row " + std::to_string(rows.size() + 1));
        RegistryEntry e = RegistryEntry::decode(row);
        if (e.index != rows.size() + 1) corrupt("index gap at row " + std::to_string(e.index));
        if (by_a.contains(key_of(e.a))) corrupt("duplicate A");
        if (by_y.contains(key_of(e.y_pub))) corrupt("duplicate Y");
        insert(std::move(e));
      } catch (const Error& err) {
        if (err.code() == ErrorCode::kCorruptRegistry) throw;
        corrupt(err.what());
      }
    }
  }
};

Registry::Registry(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Registry::Registry(Registry&&) noexcept = default;
Registry& Registry::operator=(Registry&&) noexcept = default;
Registry::~Registry() = default;

Registry Registry::in_memory() { return Registry(std::make_unique<Impl>()); }

Registry Registry::open(const std::filesystem::path& path, OpenMode mode) {
  auto impl = std::make_unique<Impl>();
  const bool exists = std::filesystem::exists(path);
  if (!exists && mode == OpenMode::kMustExist) {
    errno = ENOENT;
    storage_failure("registry " + path.string());
  }
  if (exists) {
    std::ifstream f(path, std::ios::binary);
    if (!f) storage_failure("registry read " + path.string());
    Bytes data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    impl->replay(data);
  }
  impl->file = FileHandle(::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0600));
  if (!impl->file) storage_failure("registry open " + path.string());
  if (!exists) {
    impl->file.write_all(as_bytes(kMagic));
    impl->file.sync();
  }
  return Registry(std::move(impl));
}

std::uint64_t Registry::append(const G1& a, const Scalar& x, const G1& y_pub,
                               std::optional<std::int64_t> issued_at) {
  std::unique_lock lock(impl_->mu);
  if (impl_->by_a.contains(key_of(a))) throw Error(ErrorCode::kDuplicateA, "A already registered");
  if (impl_->by_y.contains(key_of(y_pub)))
    throw Error(ErrorCode::kDuplicateY, "Y already registered");

  RegistryEntry e;
  e.index = impl_->rows.size() + 1;
  e.a = a;
  e.x = x;
  e.y_pub = y_pub;
  e.issued_at = issued_at.value_or(std::chrono::duration_cast<std::chrono::microseconds>(
                                       std::chrono::system_clock::now().time_since_epoch())
                                       .count());
  if (impl_->file) {
    const Bytes row = e.encode();
    ByteWriter framed;
    framed.u32be(static_cast<std::uint32_t>(row.size())).bytes(row).u32be(crc_of(row));
    impl_->file.write_all(framed.view());
    impl_->file.sync();
  }
  const std::uint64_t index = e.index;
  impl_->insert(std::move(e));
  return index;
}

std::optional<RegistryEntry> Registry::lookup_by_a(const G1& a) const {
  std::shared_lock lock(impl_->mu);
  auto it = impl_->by_a.find(key_of(a));
  if (it == impl_->by_a.end()) return std::nullopt;
  return impl_->rows[it->second];
}

std::optional<RegistryEntry> Registry::lookup_by_y(const G1& y_pub) const {
  std::shared_lock lock(impl_->mu);
  auto it = impl_->by_y.find(key_of(y_pub));
  if (it == impl_->by_y.end()) return std::nullopt;
  return impl_->rows[it->second];
}

bool Registry::contains_x(const Scalar& x) const {
  std::shared_lock lock(impl_->mu);
  return impl_->xs.contains(key_of(x));
}

std::vector<RegistryEntry> Registry::entries() const {
  std::shared_lock lock(impl_->mu);
  return impl_->rows;
}

std::size_t Registry::size() const {
  std::shared_lock lock(impl_->mu);
  return impl_->rows.size();
}

}  // namespace lgs
