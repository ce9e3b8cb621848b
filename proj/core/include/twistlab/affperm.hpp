#pragma once

// Affine permutations f: Z -> Z with f(i + n) = f(i) + n, in window notation
// [f(1), ..., f(n)].

#include <optional>
#include <string>
#include <vector>

namespace twistlab {

class AffinePermutation {
 public:
  AffinePermutation() = default;
  // Validates residues; does not require a zero shift.
  explicit AffinePermutation(std::vector<long> window);

  static AffinePermutation identity(int n);
  static AffinePermutation parse(const std::string& s);

  int n() const { return static_cast<int>(w_.size()); }
  const std::vector<long>& window() const { return w_; }
  long operator()(long i) const;

  // (Σ f(i) - i) / n; zero for elements of the affine symmetric group.
  long sum_shift() const;
  bool in_class(int a, int b) const;  // i - a <= f(i) <= i + b for all i
  int min_a() const;                  // smallest a with f in some (-a, .) class
  int min_b() const;

  long inversions() const;
  AffinePermutation inverse() const;
  // Maps i to f(i + s) - s.
  AffinePermutation rotate(long s) const;

  std::string str() const;

  friend bool operator==(const AffinePermutation& a, const AffinePermutation& b) { return a.w_ == b.w_; }
  friend bool operator<(const AffinePermutation& a, const AffinePermutation& b) { return a.w_ < b.w_; }

 private:
  std::vector<long> w_;
};

// (f ∘ g)(i) = f(g(i)).
AffinePermutation compose(const AffinePermutation& f, const AffinePermutation& g);

// The transposition exchanging a + jn and b + jn for all j (a ≢ b mod n).
AffinePermutation transposition(int n, long a, long b);

// All g = f ∘ t with inv(g) = inv(f) - 1.
std::vector<AffinePermutation> covers_down(const AffinePermutation& f);
// All g = f ∘ t with inv(g) = inv(f) + 1 (the boundary cells of the cell f).
std::vector<AffinePermutation> covers_up(const AffinePermutation& f);

// Elements of S̃_n(-a, b), optionally with a fixed inversion count, in
// lexicographic order of windows.
std::vector<AffinePermutation> enumerate_bounded(int n, int a, int b, std::optional<long> inv = std::nullopt);

}  // namespace twistlab
