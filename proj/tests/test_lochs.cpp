#include <doctest.h>

#include <random>
#include <vector>

#include "entq/expansions/cylinder.hpp"
#include "entq/lochs/serialize.hpp"
#include "entq/lochs/series.hpp"

using namespace entq;

namespace {

PrecisionPolicy pol(long bits = 256, int esc = 4) {
    PrecisionPolicy p;
    p.initial_bits = bits;
    p.max_escalations = esc;
    return p;
}

DigitSeq digs(std::initializer_list<long> vs) {
    DigitSeq out;
    for (long v : vs) out.push_back(Digit::integer(v));
    return out;
}

RealScalar rat(long num, long den) { return RealScalar{make_rational(BigInt(num), BigInt(den))}; }

// closure-level <=; a comparison that cannot tell the two apart is a tie, and
// a tie is never an ordering violation
bool leq(const RealScalar& a, const RealScalar& b) {
    try {
        return compare(a, b, pol(256, 6)) != Order::Greater;
    } catch (const PrecisionExhausted&) {
        return true;
    }
}

std::vector<long> longs(const DigitSeq& ds) {
    std::vector<long> out;
    for (const auto& d : ds) out.push_back(d.as_long());
    return out;
}

// all seeds of the given length over digits 0..g-1, as flat counters
DigitSeq nth_seed(long g, int len, long index) {
    DigitSeq out;
    for (int i = len - 1; i >= 0; --i) {
        long p = index;
        for (int j = 0; j < i; ++j) p /= g;
        out.push_back(Digit::integer(p % g));
    }
    return out;
}

void check_series_against_scratch(const MapPtr& S, const DigitSeq& seed, const MapPtr& T,
                                  const PrecisionPolicy& policy) {
    MSeries ms = m_series(S, seed, T, policy);
    REQUIRE(ms.rows.size() == seed.size());
    CHECK_FALSE(ms.capped);
    long prev = 0;
    for (std::size_t i = 0; i < ms.rows.size(); ++i) {
        const auto& row = ms.rows[i];
        CHECK(row.n == static_cast<long>(i + 1));
        CHECK(row.m >= prev);
        CHECK(row.jump == (row.m > prev));
        DigitSeq prefix(seed.begin(), seed.begin() + static_cast<std::ptrdiff_t>(i + 1));
        Cylinder A = cylinder(*S, prefix, policy);
        AgreementResult scratch =
            determined_digits(A.left, A.right, T, default_cap(S, row.n, T), policy);
        CHECK(scratch.status == AgreementStatus::Separated);
        CHECK(scratch.m == row.m);
        if (ms.radix_pair) {
            CHECK(row.ell == ell(row.n, ms.g, ms.h));
            CHECK(row.m <= row.ell);
        } else {
            CHECK(row.ell == -1);
        }
        prev = row.m;
    }
}

}  // namespace

TEST_CASE("determined digits match the pinned examples") {
    auto rcf = make_rcf();
    auto dec = make_radix(10);
    auto bin = make_radix(2);
    auto policy = pol();

    auto r = determined_digits(rat(35, 100), rat(36, 100), rcf, 1000, policy);
    CHECK(r.status == AgreementStatus::Separated);
    CHECK(r.m == 2);
    CHECK(longs(r.digits) == std::vector<long>{2, 1});

    r = determined_digits(rat(141, 1000), rat(142, 1000), rcf, 1000, policy);
    CHECK(r.m == 1);
    CHECK(longs(r.digits) == std::vector<long>{7});

    // a binary cylinder pins exactly its own digits
    r = determined_digits(rat(13, 64), rat(14, 64), bin, 1000, policy);
    CHECK(r.m == 6);
    CHECK(longs(r.digits) == std::vector<long>{0, 0, 1, 1, 0, 1});

    // interval straddling a rank-one boundary pins nothing
    r = determined_digits(rat(9, 100), rat(11, 100), dec, 1000, policy);
    CHECK(r.m == 0);
    CHECK(r.status == AgreementStatus::Separated);

    // truncations bracketing sqrt 2 - 1 share a long continued fraction start
    r = determined_digits(rat(414213562, 1000000000), rat(414213563, 1000000000), rcf,
                          1000, policy);
    CHECK(r.status == AgreementStatus::Separated);
    CHECK(r.m >= 8);
    CHECK(r.digits[0].as_long() == 2);
    CHECK(r.digits[1].as_long() == 2);
    CHECK(r.digits[2].as_long() == 2);

    r = determined_digits(rat(414213562, 1000000000), rat(414213563, 1000000000), rcf, 3,
                          policy);
    CHECK(r.status == AgreementStatus::CapReached);
    CHECK(r.m == 3);
    CHECK(r.digits.size() == 3);

    // a terminating endpoint accumulates: no rank-3 cylinder holds the interval
    r = determined_digits(rat(1, 3), rat(1, 3) + rat(1, 1000000000), rcf, 1000, policy);
    CHECK(r.status == AgreementStatus::Separated);
    CHECK(r.m == 2);
    CHECK(longs(r.digits) == std::vector<long>{2, 1});

    // left endpoint exactly 0 accumulates under the continued fraction map
    r = determined_digits(rat(0, 1), rat(1, 2), rcf, 1000, policy);
    CHECK(r.status == AgreementStatus::Separated);
    CHECK(r.m == 0);

    CHECK_THROWS_AS(determined_digits(rat(1, 2), rat(1, 2), rcf, 10, policy),
                    std::domain_error);
    CHECK_THROWS_AS(determined_digits(rat(2, 3), rat(1, 3), rcf, 10, policy),
                    std::domain_error);
}

TEST_CASE("ball endpoints exhaust low precision and recover after escalation") {
    auto dec = make_radix(10);
    // sqrt 2 - 1, as the left endpoint of the first square-radical cell
    RealScalar x = cylinder(*make_bolyai(), digs({1})).left;
    RealScalar y = x + RealScalar{make_rational(BigInt(1), pow_ui(10ul, 30ul))};

    auto starved = determined_digits(x, y, dec, 1000, pol(64, 0));
    CHECK(starved.status == AgreementStatus::PrecisionExhausted);
    CHECK(starved.m >= 10);
    CHECK(starved.m < 28);

    auto rescued = determined_digits(x, y, dec, 1000, pol(64, 3));
    CHECK(rescued.status == AgreementStatus::Separated);
    CHECK(rescued.m == 28);
    std::string want = "4142135623730950488016887242";
    std::string got;
    for (const auto& d : rescued.digits) got += static_cast<char>('0' + d.as_long());
    CHECK(got == want);
}

TEST_CASE("the digit budget ell is exact") {
    CHECK(ell(3, 10, 2) == 9);
    CHECK(ell(1000, 10, 2) == 3321);
    CHECK(ell(1, 7, 7) == 1);
    CHECK(ell(10, 8, 2) == 30);  // exact power ties take the larger value
    CHECK(ell(1, 2, 10) == 0);
    CHECK(ell(2, 3, 2) == 3);
    CHECK_THROWS_AS(ell(0, 10, 2), std::domain_error);
    CHECK_THROWS_AS(ell(5, 1, 2), std::domain_error);

    for (long g : {2L, 3L, 10L, 16L})
        for (long h : {2L, 3L, 10L, 16L})
            for (long n : {1L, 2L, 7L, 50L, 200L}) {
                long l = ell(n, g, h);
                BigInt G = pow_ui(BigInt(g), static_cast<unsigned long>(n));
                CHECK(pow_ui(BigInt(h), static_cast<unsigned long>(l)) <= G);
                CHECK(pow_ui(BigInt(h), static_cast<unsigned long>(l + 1)) > G);
            }
}

TEST_CASE("m series matches the worked decimal seed") {
    auto dec = make_radix(10);
    auto policy = pol();

    MSeries cf = m_series(dec, digs({3, 5}), make_rcf(), policy);
    REQUIRE(cf.rows.size() == 2);
    CHECK_FALSE(cf.radix_pair);
    CHECK(cf.rows[0].m == 0);
    CHECK(cf.rows[0].ell == -1);
    CHECK_FALSE(cf.rows[0].jump);
    CHECK(cf.rows[1].m == 2);
    CHECK(cf.rows[1].jump);

    MSeries bn = m_series(dec, digs({3, 5}), make_radix(2), policy);
    REQUIRE(bn.rows.size() == 2);
    CHECK(bn.radix_pair);
    CHECK(bn.g == 10);
    CHECK(bn.h == 2);
    CHECK(bn.rows[0].m == 2);
    CHECK(bn.rows[0].ell == 3);
    CHECK(bn.rows[0].hit == HitType::Type1);
    CHECK(bn.rows[1].m == 5);
    CHECK(bn.rows[1].ell == 6);
    CHECK(bn.rows[1].hit == HitType::Type1);

    CHECK_THROWS_AS(m_series(dec, digs({3, 11}), make_rcf(), policy), InadmissibleDigits);
}

TEST_CASE("incremental series equals scratch recomputation") {
    auto policy = pol();
    std::vector<MapPtr> targets = {make_rcf(), make_radix(2), make_lueroth()};

    // exhaustive over short radix seeds, sampled over longer ones
    for (const auto& T : targets) {
        for (int len = 1; len <= 6; ++len) {
            long count = 1;
            for (int i = 0; i < len; ++i) count *= 2;
            for (long idx = 0; idx < count; ++idx)
                check_series_against_scratch(make_radix(2), nth_seed(2, len, idx), T, policy);
        }
        for (int len = 1; len <= 6; ++len) {
            long count = 1;
            for (int i = 0; i < len; ++i) count *= 3;
            for (long idx = 0; idx < count; ++idx)
                check_series_against_scratch(make_radix(3), nth_seed(3, len, idx), T, policy);
        }
        for (int len = 1; len <= 4; ++len) {
            long count = 1;
            for (int i = 0; i < len; ++i) count *= 10;
            for (long idx = 0; idx < count; ++idx)
                check_series_against_scratch(make_radix(10), nth_seed(10, len, idx), T, policy);
        }
    }

    std::mt19937_64 rng(0x10c5);
    for (int trial = 0; trial < 120; ++trial) {
        long g = std::vector<long>{2, 3, 10}[trial % 3];
        int len = 7 + static_cast<int>(rng() % 6);
        DigitSeq seed;
        for (int i = 0; i < len; ++i)
            seed.push_back(Digit::integer(static_cast<long>(rng() % static_cast<unsigned long>(g))));
        check_series_against_scratch(make_radix(g), seed, targets[trial % targets.size()],
                                     policy);
    }
}

TEST_CASE("incremental series equals scratch for non-radix sources") {
    auto policy = pol();
    auto bin = make_radix(2);

    for (long d1 = 1; d1 <= 5; ++d1)
        for (long d2 = 1; d2 <= 5; ++d2) {
            check_series_against_scratch(make_lueroth(), digs({d1, d2}), bin, policy);
            check_series_against_scratch(make_lueroth(), digs({d1, d2}), make_rcf(), policy);
        }

    // pseudo-golden seeds: 0/1 words with no adjacent ones
    auto gold = make_pseudo_golden(2);
    std::vector<DigitSeq> gold_seeds;
    for (long mask = 0; mask < 32; ++mask) {
        DigitSeq s;
        bool ok = true;
        long prev = 0;
        for (int i = 4; i >= 0; --i) {
            long b = (mask >> i) & 1;
            if (b == 1 && prev == 1) ok = false;
            s.push_back(Digit::integer(b));
            prev = b;
        }
        if (ok) gold_seeds.push_back(std::move(s));
    }
    CHECK(gold_seeds.size() == 13);  // Fibonacci count for length-5 words
    for (const auto& s : gold_seeds) check_series_against_scratch(gold, s, bin, policy);

    auto bolyai = make_bolyai();
    for (long d1 = 0; d1 <= 2; ++d1)
        for (long d2 = 0; d2 <= 2; ++d2)
            check_series_against_scratch(bolyai, digs({d1, d2}), bin, policy);
}

TEST_CASE("jump rounds and hang lengths") {
    MSeries s;
    long ms[] = {1, 1, 2, 3, 3};
    for (int i = 0; i < 5; ++i) {
        MSeriesRow r;
        r.n = i + 1;
        r.m = ms[i];
        s.rows.push_back(r);
    }
    JumpStats j = jump_times(s);
    CHECK(j.times == std::vector<long>{1, 3, 4});
    CHECK(j.hangs == std::vector<long>{1, 2, 1});
    CHECK(j.types.size() == 3);

    MSeries flat;
    for (int i = 0; i < 4; ++i) {
        MSeriesRow r;
        r.n = i + 1;
        r.m = 0;
        flat.rows.push_back(r);
    }
    CHECK(jump_times(flat).times.empty());

    auto real = m_series(make_radix(10), digs({3, 5}), make_rcf(), pol());
    JumpStats jr = jump_times(real);
    CHECK(jr.times == std::vector<long>{2});
    CHECK(jr.hangs == std::vector<long>{2});
    CHECK(jr.types == std::vector<HitType>{HitType::None});
}

TEST_CASE("hit type counts interior boundaries only") {
    auto three = make_radix(3);
    auto two = make_radix(2);
    auto ten = make_radix(10);

    Cylinder A;
    A.left = rat(3, 10);
    A.right = rat(4, 10);
    CHECK(classify_hit_type(A, three, 0) == HitType::Type1);
    CHECK(classify_hit_type(A, ten, 0) == HitType::None);

    A.right = rat(7, 10);
    CHECK(classify_hit_type(A, three, 0) == HitType::Type2);

    A.left = rat(1, 4);
    A.right = rat(3, 4);
    CHECK(classify_hit_type(A, two, 0) == HitType::Type1);

    // endpoints sitting on the grid do not count
    A.left = rat(1, 2);
    A.right = rat(3, 4);
    CHECK(classify_hit_type(A, two, 0) == HitType::None);

    // quadratic endpoints go through the exact field arithmetic
    QuadraticElement gm1 = QuadraticElement::golden().add_rational(BigRational(-1));
    A.left = RealScalar{gm1};
    A.right = rat(1, 1);
    CHECK(classify_hit_type(A, two, 0) == HitType::None);
    CHECK(classify_hit_type(A, two, 1) == HitType::Type1);

    CHECK_THROWS_AS(classify_hit_type(A, make_rcf(), 0), std::domain_error);
    Cylinder B;
    B.left = cylinder(*make_bolyai(), digs({1})).left;
    B.right = rat(1, 1);
    CHECK_THROWS_AS(classify_hit_type(B, two, 0), std::domain_error);
}

TEST_CASE("hang frequency pools steps across trials") {
    MSeries t1, t2;
    long m1[] = {0, 0, 1};
    long m2[] = {1, 1, 1};
    for (int i = 0; i < 3; ++i) {
        MSeriesRow r;
        r.n = i + 1;
        r.m = m1[i];
        t1.rows.push_back(r);
        r.m = m2[i];
        t2.rows.push_back(r);
    }
    HangEstimate e = hang_frequency({t1, t2}, 10);
    CHECK(e.steps == 4);
    CHECK(e.hangs == 3);
    CHECK(e.frequency == doctest::Approx(0.75));
    CHECK(e.standard_error == doctest::Approx(std::sqrt(0.75 * 0.25 / 4.0)));
    CHECK_THROWS_AS(hang_frequency({t1}, 1), std::domain_error);

    // the self pair never hangs: every digit of the seed pins one more digit
    auto bin = make_radix(2);
    std::mt19937_64 rng(7);
    std::vector<MSeries> self;
    for (int t = 0; t < 5; ++t) {
        DigitSeq seed;
        for (int i = 0; i < 50; ++i) seed.push_back(Digit::integer(static_cast<long>(rng() % 2)));
        MSeries s = m_series(bin, seed, bin, pol());
        for (const auto& row : s.rows) {
            CHECK(row.m == row.n);
            CHECK(row.ell == row.n);
            CHECK(row.hit == HitType::Type1);
        }
        self.push_back(std::move(s));
    }
    HangEstimate z = hang_frequency(self, 2);
    CHECK(z.hangs == 0);
    CHECK(z.steps == 5 * 49);
    CHECK(z.frequency == 0.0);
}

TEST_CASE("decimal to binary series hangs about a tenth of the time") {
    auto dec = make_radix(10);
    auto bin = make_radix(2);
    auto policy = pol();
    std::mt19937_64 rng(0xbeef);
    std::vector<MSeries> trials;
    for (int t = 0; t < 25; ++t) {
        DigitSeq seed;
        for (int i = 0; i < 150; ++i)
            seed.push_back(Digit::integer(static_cast<long>(rng() % 10)));
        MSeries s = m_series(dec, seed, bin, policy);
        for (const auto& row : s.rows) {
            CHECK(row.m <= row.ell);
            if (row.jump) CHECK(jump_bound_holds(row.m, row.ell, 10, 2));
        }
        JumpStats js = jump_times(s);
        for (HitType t2 : js.types) CHECK(t2 != HitType::None);
        trials.push_back(std::move(s));
    }
    HangEstimate e = hang_frequency(trials, 10);
    CHECK(e.steps == 25 * 149);
    CHECK(std::abs(e.frequency - 0.1) < 0.025);
    CHECK(e.standard_error > 0.0);
    CHECK(e.standard_error < 0.01);
}

TEST_CASE("jump bounds in exact arithmetic") {
    CHECK(jump_bound_holds(5, 9, 10, 2));        // 2^3 = 8 <= 10
    CHECK_FALSE(jump_bound_holds(4, 9, 10, 2));  // 2^4 = 16 > 10
    CHECK(jump_bound_holds(8, 9, 10, 2));
    CHECK(jump_bound_holds(0, 1, 10, 2));
    CHECK(jump_bound_holds(0, 5, 16, 2));  // 2^4 = 16 <= 16, equality counts
    CHECK_FALSE(jump_bound_holds(0, 6, 16, 2));
    CHECK_THROWS_AS(jump_bound_holds(0, 1, 1, 2), std::domain_error);

    CHECK(golden_jump_bound_holds(0, 1, 10));        // gamma^2 >= 1
    CHECK_FALSE(golden_jump_bound_holds(0, 2, 10));  // gamma^2 < 10
    CHECK(golden_jump_bound_holds(5, 2, 10));        // gamma^7 about 29
    CHECK_FALSE(golden_jump_bound_holds(2, 4, 2));   // gamma^4 about 6.85 < 8
    CHECK(golden_jump_bound_holds(3, 4, 2));         // gamma^5 about 11.1 >= 8
    CHECK_THROWS_AS(golden_jump_bound_holds(-1, 1, 10), std::domain_error);
}

TEST_CASE("decimal to golden series respects the golden jump bound") {
    auto dec = make_radix(10);
    auto gold = make_pseudo_golden(2);
    auto policy = pol();
    std::mt19937_64 rng(0x90d);
    double ratio_sum = 0.0;
    for (int t = 0; t < 8; ++t) {
        DigitSeq seed;
        for (int i = 0; i < 40; ++i)
            seed.push_back(Digit::integer(static_cast<long>(rng() % 10)));
        MSeries s = m_series(dec, seed, gold, policy);
        long prev = 0;
        for (const auto& row : s.rows) {
            CHECK(row.m >= prev);
            CHECK(row.ell == -1);
            if (row.jump) CHECK(golden_jump_bound_holds(row.m, row.n, 10));
            prev = row.m;
        }
        ratio_sum += static_cast<double>(s.rows.back().m) / 40.0;
    }
    double mean_ratio = ratio_sum / 8.0;
    CHECK(mean_ratio > 4.0);
    CHECK(mean_ratio < 5.6);
}

TEST_CASE("determined digits name the smallest covering cylinder") {
    auto policy = pol();
    struct Probe {
        MapPtr T;
        RealScalar L, R;
        long digit_lo, digit_hi;
    };
    std::vector<Probe> probes = {
        {make_rcf(), rat(35, 100), rat(36, 100), 1, 12},
        {make_rcf(), rat(141, 1000), rat(142, 1000), 1, 12},
        {make_radix(2), rat(13, 64), rat(14, 64), 0, 1},
        {make_radix(10), rat(299, 1000), rat(301, 1000), 0, 9},
        {make_lueroth(), rat(3, 10), rat(4, 10), 1, 12},
        {make_rcf(), rat(1, 3), rat(1, 3) + rat(1, 1000000000), 1, 12},
    };
    for (const auto& p : probes) {
        AgreementResult r = determined_digits(p.L, p.R, p.T, 1000, policy);
        REQUIRE(r.status == AgreementStatus::Separated);
        Cylinder c = cylinder(*p.T, r.digits, policy);
        CHECK(leq(c.left, p.L));
        CHECK(leq(p.R, c.right));
        for (long v = p.digit_lo; v <= p.digit_hi; ++v) {
            DigitSeq ext = r.digits;
            ext.push_back(Digit::integer(v));
            if (!p.T->admissible(ext)) continue;
            Cylinder c2 = cylinder(*p.T, ext, policy);
            bool covers = leq(c2.left, p.L) && leq(p.R, c2.right);
            CHECK_FALSE(covers);
        }
    }
}

TEST_CASE("series serialization") {
    auto policy = pol();
    MSeries bn = m_series(make_radix(10), digs({3, 5}), make_radix(2), policy);
    CHECK(to_csv(bn) == "n,m,ell,jump,type\n1,2,3,1,TYPE1\n2,5,6,1,TYPE1\n");

    MSeries cf = m_series(make_radix(10), digs({3, 5}), make_rcf(), policy);
    CHECK(to_csv(cf) == "n,m,ell,jump,type\n1,0,,0,\n2,2,,1,\n");

    JumpStats jb = jump_times(bn);
    CHECK(to_csv(jb) == "k,n,v,type\n1,1,1,TYPE1\n2,2,1,TYPE1\n");
    JumpStats jc = jump_times(cf);
    CHECK(to_csv(jc) == "k,n,v,type\n1,2,2,\n");

    nlohmann::ordered_json j = to_json(bn);
    CHECK(j["radix_pair"] == true);
    CHECK(j["g"] == 10);
    CHECK(j["h"] == 2);
    CHECK(j["capped"] == false);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][1]["m"] == 5);
    CHECK(j["rows"][1]["type"] == "TYPE1");

    nlohmann::ordered_json jf = to_json(cf);
    CHECK(jf["g"].is_null());
    CHECK(jf["rows"][0]["ell"].is_null());
    CHECK(jf["rows"][0]["type"].is_null());

    nlohmann::ordered_json jj = to_json(jb);
    CHECK(jj["times"] == nlohmann::ordered_json::array({1, 2}));
    CHECK(jj["hangs"] == nlohmann::ordered_json::array({1, 1}));

    CHECK(std::string(to_string(AgreementStatus::Separated)) == "separated");
    CHECK(std::string(to_string(AgreementStatus::CapReached)) == "cap-reached");
    CHECK(std::string(to_string(HitType::Type2)) == "TYPE2");
}
