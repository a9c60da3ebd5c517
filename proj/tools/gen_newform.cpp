// Generate the coefficient file for the rational newform attached to the
// elliptic curve [1,1,0,-11,0] of conductor 33 by point counting.
//
// Usage: gen_newform [bound] > 33a.txt
//
// This is the same computation as tools/gen_newform.py but fast enough to
// reach the coefficient ranges needed by the degree-4 L-value sums.
#include <cstdio>
#include <cstdlib>
#include <cstdint>
#include <vector>

namespace {

constexpr long A1 = 1, A2 = 1, A3 = 0, A4 = -11, A6 = 0;
constexpr long N = 33;
constexpr long B2 = A1 * A1 + 4 * A2;
constexpr long B4 = 2 * A4 + A1 * A3;
constexpr long B6 = A3 * A3 + 4 * A6;

std::vector<long> primes_up_to(long n) {
    std::vector<uint8_t> s(n + 1, 1);
    s[0] = s[1] = 0;
    for (long i = 2; i * i <= n; ++i)
        if (s[i])
            for (long j = i * i; j <= n; j += i) s[j] = 0;
    std::vector<long> out;
    for (long i = 2; i <= n; ++i)
        if (s[i]) out.push_back(i);
    return out;
}

long a_good_odd(long l) {
    std::vector<uint8_t> qr(l, 0);
    for (long x = 1; x <= (l - 1) / 2; ++x) qr[x * x % l] = 1;
    long b2 = ((B2 % l) + l) % l, b4 = ((2 * B4 % l) + l) % l, b6 = ((B6 % l) + l) % l;
    long s = 0;
    for (long x = 0; x < l; ++x) {
        long g = ((4 * x + b2) % l) * x % l;
        g = (g + b4) * x % l;
        g = (g + b6) % l;
        if (g != 0) s += qr[g] ? 1 : -1;
    }
    return -s;
}

long count_smooth_affine(long l) {
    long smooth = 0;
    for (long x = 0; x < l; ++x)
        for (long y = 0; y < l; ++y) {
            long f = (y * y + A1 * x * y + A3 * y - (x * x * x + A2 * x * x + A4 * x + A6)) % l;
            if (((f % l) + l) % l != 0) continue;
            long fx = (((A1 * y - (3 * x * x + 2 * A2 * x + A4)) % l) + l) % l;
            long fy = (((2 * y + A1 * x + A3) % l) + l) % l;
            if (fx != 0 || fy != 0) ++smooth;
        }
    return smooth;
}

long a_prime(long l) {
    if (N % l == 0) return l - (count_smooth_affine(l) + 1);
    if (l == 2) return l + 1 - (count_smooth_affine(l) + 1);
    return a_good_odd(l);
}

}  // namespace

int main(int argc, char** argv) {
    long bound = argc > 1 ? std::atol(argv[1]) : 450000;
    std::vector<int32_t> a(bound + 1, 0);
    a[1] = 1;
    for (long l : primes_up_to(bound)) {
        long al = a_prime(l);
        if (N % l != 0 && al * al > 4 * l) {
            std::fprintf(stderr, "Hasse bound violated at %ld\n", l);
            return 1;
        }
        long prev = 1, cur = al;
        for (long pw = l; pw <= bound; pw *= l) {
            a[pw] = (int32_t)cur;
            long nxt = (N % l == 0) ? al * cur : al * cur - l * prev;
            prev = cur;
            cur = nxt;
            if (pw > bound / l) break;
        }
    }
    // multiplicative fill via smallest prime factor
    std::vector<int32_t> spf(bound + 1, 0);
    for (long i = 2; i <= bound; ++i)
        if (!spf[i])
            for (long j = i; j <= bound; j += i)
                if (!spf[j]) spf[j] = (int32_t)i;
    for (long n = 2; n <= bound; ++n) {
        long p = spf[n], pk = 1, m = n;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m > 1) a[n] = a[pk] * a[m];
    }
    std::printf("label 33a\nweight 2\nlevel 33\nbase-field rational\n");
    for (long n = 1; n <= bound; ++n) std::printf("%ld %d\n", n, a[n]);
    return 0;
}
