#include <gtest/gtest.h>

#include "brute.hpp"
#include "residuo/selftest.hpp"
#include "residuo/zolotarev.hpp"

using namespace residuo;

namespace {

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no residuo::Error thrown";
  return Errc::invalid_input;
}

void expect_suite_passes(selftest::Report r) {
  EXPECT_GT(r.cases, 0u) << r.name;
  EXPECT_TRUE(r.passed()) << r.name << ": " << r.first_failure.value_or("");
}

}  // namespace

TEST(PermutationSign, Examples) {
  EXPECT_EQ(permutation_sign({{1, 4, 9}, {1, 4, 9}}), Sign::plus());
  EXPECT_EQ(permutation_sign({{1, 4}, {4, 1}}), Sign::minus());
  EXPECT_EQ(permutation_sign({{1, 2, 3}, {2, 3, 1}}), Sign::plus());
  EXPECT_EQ(permutation_sign({{}, {}}), Sign::plus());
}

TEST(PermutationSign, RejectsNonPermutations) {
  EXPECT_EQ(error_of([] { permutation_sign({{1, 2}, {1, 1}}); }), Errc::not_a_permutation);
  EXPECT_EQ(error_of([] { permutation_sign({{1, 2}, {1, 3}}); }), Errc::not_a_permutation);
  EXPECT_EQ(error_of([] { permutation_sign({{1, 2}, {1}}); }), Errc::not_a_permutation);
}

TEST(PermutationSign, MatchesInversionCount) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::uint64_t> image(1 + rng() % 12);
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = i;
    std::shuffle(image.begin(), image.end(), rng);
    PermutationTable table{{}, image};
    for (std::size_t i = 0; i < image.size(); ++i) table.domain.push_back(i);
    ASSERT_EQ(permutation_sign(table).value(), brute::inversion_sign(image));
  }
}

TEST(MultiplicationPermutation, Examples) {
  const PermutationTable t = multiplication_permutation(4, 15, residue_set(15, 1, true));
  EXPECT_EQ(t.domain, (std::vector<std::uint64_t>{1, 4}));
  EXPECT_EQ(t.image, (std::vector<std::uint64_t>{4, 1}));

  const ResidueClassSet s = residue_set(65, 1, false);
  const PermutationTable id = multiplication_permutation(1, 65, s);
  EXPECT_EQ(id.domain, id.image);

  const PermutationTable z = multiplication_permutation(4, 65, s);
  EXPECT_EQ(z.domain.front(), 0u);
  EXPECT_EQ(z.image.front(), 0u);
  EXPECT_NO_THROW(permutation_sign(z));
}

TEST(MultiplicationPermutation, Errors) {
  // 2 is no square mod 15, so multiplying the squares by it leaves the set.
  EXPECT_EQ(error_of([] { multiplication_permutation(2, 15, residue_set(15, 1, true)); }),
            Errc::not_closed_under_action);
  EXPECT_EQ(error_of([] { multiplication_permutation(3, 15, residue_set(15, 1, true)); }), Errc::not_coprime);
  EXPECT_EQ(error_of([] { multiplication_permutation(4, 21, residue_set(15, 1, true)); }), Errc::invalid_input);
}

TEST(ZolotarevPrime, Examples) {
  EXPECT_EQ(brute::multiplication_sign(4, 13, brute::powers(13, 1, true)), brute::prime_symbol(4, 13, 2));
  EXPECT_EQ(zolotarev_prime(4, 13, 2), Sign::minus());
  EXPECT_EQ(brute::multiplication_sign(3, 13, brute::powers(13, 1, true)), 1);
  EXPECT_EQ(zolotarev_prime(3, 13, 2), Sign::plus());
  for (unsigned k = 1; k <= 5; ++k) EXPECT_EQ(zolotarev_prime(1, 17, k), Sign::plus());
}

TEST(ZolotarevPrime, Errors) {
  EXPECT_EQ(error_of([] { zolotarev_prime(2, 13, 2); }), Errc::precondition_violated);
  EXPECT_EQ(error_of([] { zolotarev_prime(13, 13, 1); }), Errc::not_coprime);
  EXPECT_EQ(error_of([] { zolotarev_prime(1, 15, 1); }), Errc::invalid_modulus);
  EXPECT_EQ(error_of([] { zolotarev_prime(1, 13, 0); }), Errc::invalid_input);
}

TEST(ZolotarevSemiprime, Examples) {
  EXPECT_EQ(brute::multiplication_sign(4, 15, brute::powers(15, 1, true)), -1);
  EXPECT_EQ(zolotarev_semiprime(4, 3, 5, 2), Sign::minus());
  EXPECT_EQ(brute::multiplication_sign(4, 65, brute::powers(65, 1, false)), 1);
  EXPECT_EQ(zolotarev_semiprime(4, 5, 13, 2), Sign::plus());
  for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(zolotarev_semiprime(1, 7, 11, k), Sign::plus());
}

TEST(ZolotarevSemiprime, Errors) {
  EXPECT_EQ(error_of([] { zolotarev_semiprime(4, 5, 5, 2); }), Errc::not_admissible_modulus);
  EXPECT_EQ(error_of([] { zolotarev_semiprime(1, 2, 5, 1); }), Errc::not_admissible_modulus);
  EXPECT_EQ(error_of([] { zolotarev_semiprime(1, 9, 5, 1); }), Errc::not_admissible_modulus);
  EXPECT_EQ(error_of([] { zolotarev_semiprime(5, 5, 13, 1); }), Errc::not_coprime);
  EXPECT_EQ(error_of([] { zolotarev_semiprime(2, 3, 13, 2); }), Errc::precondition_violated);
}

TEST(ProductPermutationSign, Examples) {
  const std::vector<Sign> s1{Sign::minus(), Sign::plus()};
  const std::vector<std::uint64_t> z1{2, 4};
  EXPECT_EQ(product_permutation_sign(s1, z1), Sign::plus());
  const std::vector<Sign> s2{Sign::minus(), Sign::minus()};
  const std::vector<std::uint64_t> z2{3, 5};
  EXPECT_EQ(product_permutation_sign(s2, z2), Sign::plus());
  for (Sign s : {Sign::plus(), Sign::minus()}) {
    const std::vector<Sign> one{s};
    const std::vector<std::uint64_t> size{7};
    EXPECT_EQ(product_permutation_sign(one, size), s);
  }
  const std::vector<std::uint64_t> bad{3};
  EXPECT_EQ(error_of([&] { product_permutation_sign(s2, bad); }), Errc::invalid_input);
}

TEST(TriplePrime, Examples) {
  const auto found = find_tripleprime_counterexample(200);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(found->n, 195u);
  EXPECT_EQ(found->m, 79u);
  EXPECT_FALSE(find_tripleprime_counterexample(100).has_value());
}

TEST(TriplePrime, WitnessCheckedByReference) {
  EXPECT_EQ(brute::composite_symbol(79, 195, 2), -1);
  EXPECT_EQ(brute::multiplication_sign(79, 195, brute::powers(195, 1, true)), 1);
  EXPECT_EQ(brute::multiplication_sign(79, 195, brute::powers(195, 1, false)), 1);
  for (auto [p, e] : brute::factor(195)) EXPECT_EQ(brute::prime_symbol(79, p, 1), 1) << p;
}

TEST(ZolotarevProperties, PrimeCase) { expect_suite_passes(selftest::suite_t3({100, 4})); }
TEST(ZolotarevProperties, SemiprimeCase) { expect_suite_passes(selftest::suite_t5({400, 3})); }
TEST(ZolotarevProperties, ClassicalJacobi) { expect_suite_passes(selftest::suite_zolotarev_jacobi({150, {}})); }
TEST(ZolotarevProperties, ProductSign) { expect_suite_passes(selftest::suite_l5({})); }
TEST(ZolotarevProperties, Counterexample) { expect_suite_passes(selftest::suite_counterexample({})); }
