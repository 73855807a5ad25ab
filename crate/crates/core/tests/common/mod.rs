#![allow(dead_code)]

/// `(x, digamma, trigamma, ln_gamma)` at 50 digits, from `data/specfun_oracle.py`.
pub const SPECFUN_ORACLE: [(f64, f64, f64, f64); 30] = [
    (0.001, -1000.5755719318103005, 1000001.642533195869, 6.9071788853838536825),
    (0.01, -100.5608854578686745, 10001.62121352831322, 4.5994798780420217225),
    (0.1, -10.423754940411076795, 101.43329915079275882, 2.2527126517342059599),
    (0.25, -4.2274535333762654081, 17.197329154507110739, 1.2880225246980774574),
    (0.5, -1.9635100260214234794, 4.9348022005446793094, 0.57236494292470008707),
    (0.75, -1.0858608797864721696, 2.5418796476716064984, 0.20328095143129537148),
    (1.0, -0.57721566490153286061, 1.6449340668482264365, 0.0),
    (1.5, 0.036489973978576520559, 0.93480220054467930942, -0.12078223763524522235),
    (2.0, 0.42278433509846713939, 0.64493406684822643647, 0.0),
    (2.5, 0.70315664064524318723, 0.49035775610023486497, 0.28468287047291915963),
    (3.0, 0.92278433509846713939, 0.39493406684822643647, 0.69314718055994530942),
    (3.7, 1.1671535393615113859, 0.3100378576700383191, 1.4280723266653879219),
    (5.0, 1.5061176684318004727, 0.22132295573711532536, 3.1780538303479456196),
    (5.99, 1.7043027974138488783, 0.18165144551675371714, 4.7704396377154038069),
    (6.0, 1.7061176684318004727, 0.18132295573711532536, 4.7874917427820459942),
    (6.01, 1.7079292604712082182, 0.18099564874411414599, 4.8045619801541184293),
    (7.3, 1.9178203356379860984, 0.14679576813142709816, 7.1478925230222490328),
    (10.0, 2.2517525890667211076, 0.10516633568168574612, 12.801827480081469611),
    (12.5, 2.4851956512749120482, 0.083285224601578370444, 18.734347511936445702),
    (20.0, 2.9705239922421490509, 0.051270822935203119832, 39.339884187199494036),
    (33.3, 3.4904672385202428639, 0.030485444095338885149, 82.603723581654952928),
    (50.0, 3.901989673427892197, 0.020201333226697125806, 144.56574394634488601),
    (100.0, 4.6001618527380874002, 0.010050166663333571395, 359.13420536957539878),
    (250.0, 5.519459584531046417, 0.0040080106666325337234, 1128.5237708729907142),
    (1000.0, 6.9072551956488120521, 0.0010005001666666333334, 5905.2204232091812118),
    (1e4, 9.2102903711428494036, 0.00010000500016666666633, 82099.717496442377273),
    (1e5, 11.512920464961895087, 0.000010000050000166666667, 1051287.7089736568949),
    (1e6, 13.815510057964190771, 1.0000005000001666667e-6, 12815504.56914761166),
    (1e7, 16.118095600958318955, 1.0000000500000016667e-7, 151180949.36947391394),
    (1e8, 18.420680738952365464, 1.0000000050000000167e-8, 1742068066.1038347093),
];

/// Bisection root of `digamma(x) = 20` on `[e^20 / 2, 2 e^20]`.
pub const INVERSE_DIGAMMA_20: f64 = 485165195.9097902778832254;

/// `(x, b)` pairs used for the kernel normalization checks.
pub fn normalization_points() -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for b in [0.5, 0.1, 0.02] {
        for x in [0.05, 0.5, 1.0, 5.0] {
            pts.push((x, b));
        }
    }
    pts
}

/// Largest error in units of `max(1, |reference|)`.
pub fn scaled_error(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// `(kernel, x, b, z, ln K(z))` at 40 digits, from `data/kernel_oracle.py`.
pub const KERNEL_ORACLE: [(&str, f64, f64, f64, f64); 35] = [
    ("ge", 1.0, 0.05, 0.9, -2.3933238664142638129),
    ("ge", 3.0, 0.02, 3.5, -21.087976994585741386),
    ("ge", 0.5, 0.1, 0.45, 1.1558087721768889781),
    ("ge", 5.0, 0.25, 6.0, -2.632021277731437936),
    ("ge", 2.0, 0.01, 1.97, -12.480366737199626056),
    ("ge", 0.2, 0.5, 1.3, -1.5448101423936326378),
    ("ge2", 1.0, 0.05, 0.9, 0.26986097671758077103),
    ("ge2", 3.0, 0.02, 3.5, -21.66519265948118382),
    ("ge2", 0.5, 0.1, 0.45, 1.3052369223630026979),
    ("ge2", 5.0, 0.25, 6.0, -3.2012047947124075182),
    ("ge2", 2.0, 0.01, 1.97, -4.2492606669700199071),
    ("ge2", 0.2, 0.5, 1.3, -3.0800337144984663713),
    ("gam1", 1.0, 0.05, 0.9, 0.46755097072379983524),
    ("gam1", 3.0, 0.02, 3.5, -1.3901867554684296247),
    ("gam1", 0.5, 0.1, 0.45, 0.53548033409337004178),
    ("gam1", 5.0, 0.25, 6.0, -1.3882454926746820179),
    ("gam1", 2.0, 0.01, 1.97, 1.0139287411803191778),
    ("gam1", 0.2, 0.5, 1.3, -1.4050353272567088999),
    ("gam2", 1.0, 0.05, 0.9, 0.57291148638162611179),
    ("gam2", 3.0, 0.02, 3.5, -1.544337435295687929),
    ("gam2", 0.5, 0.1, 0.45, 0.64084084975119631834),
    ("gam2", 5.0, 0.25, 6.0, -1.5705670494686366441),
    ("gam2", 2.0, 0.01, 1.97, 1.029042378990367362),
    ("gam2", 0.2, 0.5, 1.3, -1.8468347105380624248),
    ("ig", 1.0, 0.05, 0.9, 0.62585726594795108916),
    ("ig", 3.0, 0.02, 3.5, -1.040484181646350125),
    ("ig", 0.5, 0.1, 0.45, 1.3190044465078963986),
    ("ig", 5.0, 0.25, 6.0, -2.9267638898201432669),
    ("ig", 2.0, 0.01, 1.97, 0.36088558576605007654),
    ("ig", 0.2, 0.5, 1.3, -24.235142108856703978),
    ("rig", 1.0, 0.05, 0.9, 0.60383008362345811766),
    ("rig", 3.0, 0.02, 3.5, -1.5207370861668551122),
    ("rig", 0.5, 0.1, 0.45, 0.60383008362345807141),
    ("rig", 5.0, 0.25, 6.0, -1.6425044205920882661),
    ("rig", 2.0, 0.01, 1.97, 1.0344775041504649516),
];
