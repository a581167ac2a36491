#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include "lgs/error.hpp"
#include "lgs/registry.hpp"

namespace lgs {
namespace {

namespace fs = std::filesystem;

class RegistryFile : public ::testing::Test {
 protected:
  void SetUp() override {
    path_ = fs::temp_directory_path() /
            ("lgs_registry_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove(path_);
  }
  void TearDown() override { fs::remove(path_); }
  fs::path path_;
};

G1 point(int i) { return G1::hash_to("registry-test", as_bytes("p" + std::to_string(i))); }

TEST(Registry, FirstAppendIsIndexOne) {
  Registry r = Registry::in_memory();
  EXPECT_EQ(r.append(point(1), Scalar::from_u64(1), point(2)), 1u);
  EXPECT_EQ(r.append(point(3), Scalar::from_u64(2), point(4)), 2u);
  EXPECT_EQ(r.size(), 2u);
}

TEST(Registry, DuplicateKeys) {
  Registry r = Registry::in_memory();
  r.append(point(1), Scalar::from_u64(1), point(2));
  try {
    r.append(point(5), Scalar::from_u64(3), point(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateY);
  }
  try {
    r.append(point(1), Scalar::from_u64(3), point(6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateA);
  }
  EXPECT_EQ(r.size(), 1u);
}

TEST(Registry, LookupMatchesLinearScan) {
  Registry r = Registry::in_memory();
  for (int i = 0; i < 10; ++i) r.append(point(2 * i), Scalar::from_u64(100 + i), point(2 * i + 1));
  const auto all = r.entries();
  for (int i = 0; i < 10; ++i) {
    const G1 a = point(2 * i);
    const RegistryEntry* expected = nullptr;
    for (const auto& e : all)
      if (e.a == a) expected = &e;
    ASSERT_NE(expected, nullptr);
    const auto got = r.lookup_by_a(a);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, *expected);
    EXPECT_EQ(got->index, static_cast<std::uint64_t>(i + 1));
    EXPECT_TRUE(r.contains_x(Scalar::from_u64(100 + i)));
  }
  EXPECT_FALSE(r.lookup_by_a(point(999)).has_value());
  EXPECT_FALSE(r.contains_x(Scalar::from_u64(5)));
}

TEST_F(RegistryFile, DurableAcrossReopen) {
  std::vector<RegistryEntry> before;
  {
    Registry r = Registry::open(path_);
    for (int i = 0; i < 5; ++i) r.append(point(2 * i), Scalar::from_u64(i + 1), point(2 * i + 1));
    before = r.entries();
  }
  Registry again = Registry::open(path_, Registry::OpenMode::kMustExist);
  EXPECT_EQ(again.entries(), before);
  const auto e = again.lookup_by_a(point(4));
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->index, 3u);
  EXPECT_EQ(again.append(point(100), Scalar::from_u64(77), point(101)), 6u);
}

TEST_F(RegistryFile, FileLayout) {
  {
    Registry r = Registry::open(path_);
    r.append(point(1), Scalar::from_u64(9), point(2), 1234);
  }
  std::ifstream f(path_, std::ios::binary);
  Bytes data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  ASSERT_EQ(data.size(), 7u + 4u + RegistryEntry::kEncodedSize + 4u);
  EXPECT_EQ(std::string(data.begin(), data.begin() + 7), "LGSREG1");
  ByteReader in(ByteView(data).subspan(7));
  EXPECT_EQ(in.u32be(), RegistryEntry::kEncodedSize);
  const RegistryEntry e = RegistryEntry::decode(in.take(RegistryEntry::kEncodedSize));
  EXPECT_EQ(e.index, 1u);
  EXPECT_EQ(e.issued_at, 1234);
  EXPECT_EQ(e.x, Scalar::from_u64(9));
}

TEST_F(RegistryFile, CorruptionIsDetected) {
  {
    Registry r = Registry::open(path_);
    r.append(point(1), Scalar::from_u64(9), point(2));
  }
  {
    std::fstream f(path_, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(20);
    f.put('\x5a');
  }
  try {
    Registry::open(path_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptRegistry);
  }
}

TEST_F(RegistryFile, MissingFileWhenRequired) {
  try {
    Registry::open(path_, Registry::OpenMode::kMustExist);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStorageFailure);
  }
}

TEST(Registry, ReadersSeeConsistentPrefix) {
  Registry r = Registry::in_memory();
  constexpr int kRows = 40;
  std::vector<G1> as;
  for (int i = 0; i < kRows; ++i) as.push_back(point(2 * i));
  std::atomic<bool> done{false};
  std::atomic<int> violations{0};
  std::thread reader([&] {
    while (!done) {
      const auto rows = r.entries();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].index != i + 1) ++violations;
        const auto hit = r.lookup_by_a(rows[i].a);
        if (!hit || hit->index != rows[i].index) ++violations;
      }
    }
  });
  for (int i = 0; i < kRows; ++i) r.append(as[i], Scalar::from_u64(i + 1), point(2 * i + 1));
  done = true;
  reader.join();
  EXPECT_EQ(violations.load(), 0);
  EXPECT_EQ(r.size(), static_cast<std::size_t>(kRows));
}

}  // namespace
}  // namespace lgs
