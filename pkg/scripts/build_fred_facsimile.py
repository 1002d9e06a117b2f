"""Build FRED-style GDP (quarterly) and M2SL (monthly) CSV facsimiles.

Values are reconstructions of the published series: nominal GDP (SAAR,
billions) is tabulated per quarter from published figures; M2 (billions,
monthly) is tabulated at anchor months and geometrically interpolated in
between. Accuracy is roughly 0.5-1% pointwise; long-run growth, recession
profiles and the 2020 money-supply surge match the published record.
"""
import datetime as dt
import numpy as np

# Nominal GDP, SAAR billions, 1959Q1..2024Q4, row per year (Q1..Q4).
GDP_QUARTERLY = [
    (1959, 510.330, 522.653, 525.034, 528.600),
    (1960, 542.648, 541.080, 545.226, 540.197),
    (1961, 545.343, 555.728, 567.681, 580.612),
    (1962, 594.013, 600.366, 609.027, 612.830),
    (1963, 621.672, 629.042, 642.842, 653.963),
    (1964, 671.064, 680.822, 692.791, 698.350),
    (1965, 719.235, 732.394, 750.191, 773.086),
    (1966, 797.294, 807.280, 820.880, 834.845),
    (1967, 846.000, 851.062, 866.619, 883.152),
    (1968, 911.059, 936.305, 952.292, 970.056),
    (1969, 995.351, 1011.409, 1032.027, 1040.693),
    (1970, 1053.532, 1070.088, 1088.528, 1091.490),
    (1971, 1137.798, 1159.432, 1180.291, 1193.646),
    (1972, 1233.789, 1270.106, 1293.775, 1332.040),
    (1973, 1380.700, 1417.598, 1436.794, 1479.055),
    (1974, 1494.741, 1534.178, 1563.429, 1602.953),
    (1975, 1619.595, 1656.375, 1713.834, 1765.884),
    (1976, 1824.456, 1856.939, 1890.532, 1938.414),
    (1977, 1992.541, 2060.215, 2122.370, 2168.683),
    (1978, 2208.702, 2336.551, 2398.896, 2482.173),
    (1979, 2531.630, 2595.918, 2670.366, 2730.672),
    (1980, 2796.529, 2799.920, 2860.049, 2993.531),
    (1981, 3131.789, 3167.264, 3261.198, 3283.534),
    (1982, 3273.811, 3331.312, 3367.104, 3407.817),
    (1983, 3480.324, 3583.840, 3692.341, 3796.137),
    (1984, 3912.812, 4014.982, 4087.422, 4147.607),
    (1985, 4237.011, 4302.282, 4394.585, 4453.137),
    (1986, 4516.318, 4555.219, 4619.637, 4669.414),
    (1987, 4736.200, 4821.489, 4900.488, 5022.696),
    (1988, 5090.577, 5207.655, 5299.454, 5412.715),
    (1989, 5527.407, 5628.354, 5711.603, 5763.393),
    (1990, 5890.795, 5974.657, 6029.529, 6023.325),
    (1991, 6054.926, 6143.643, 6218.358, 6279.262),
    (1992, 6380.818, 6492.322, 6586.530, 6697.552),
    (1993, 6748.201, 6829.610, 6904.198, 7032.830),
    (1994, 7136.272, 7269.783, 7352.292, 7476.656),
    (1995, 7545.343, 7604.905, 7706.524, 7799.505),
    (1996, 7893.147, 8061.535, 8158.963, 8287.062),
    (1997, 8402.075, 8551.851, 8691.766, 8788.302),
    (1998, 8889.668, 8994.727, 9146.483, 9325.720),
    (1999, 9447.053, 9557.035, 9712.311, 9926.057),
    (2000, 10031.001, 10278.302, 10357.406, 10472.288),
    (2001, 10508.132, 10638.376, 10639.487, 10701.314),
    (2002, 10834.415, 10934.833, 11037.140, 11103.843),
    (2003, 11230.120, 11370.676, 11625.086, 11816.819),
    (2004, 11988.447, 12181.404, 12367.705, 12562.173),
    (2005, 12813.699, 12974.117, 13205.387, 13381.558),
    (2006, 13648.911, 13799.819, 13908.483, 14066.370),
    (2007, 14233.222, 14422.274, 14569.737, 14685.302),
    (2008, 14668.441, 14812.974, 14843.018, 14549.938),
    (2009, 14383.946, 14340.405, 14384.083, 14566.471),
    (2010, 14681.070, 14888.562, 15057.690, 15230.194),
    (2011, 15238.371, 15460.937, 15587.059, 15785.299),
    (2012, 15973.934, 16121.896, 16227.940, 16297.348),
    (2013, 16475.421, 16541.409, 16749.305, 16999.893),
    (2014, 17025.194, 17285.622, 17569.148, 17692.231),
    (2015, 17783.579, 17998.301, 18141.907, 18222.753),
    (2016, 18281.563, 18450.064, 18675.263, 18905.545),
    (2017, 19057.705, 19250.009, 19500.577, 19754.102),
    (2018, 20155.486, 20470.197, 20687.278, 20819.269),
    (2019, 21013.085, 21272.448, 21531.839, 21706.532),
    (2020, 21538.032, 19636.731, 21362.428, 21704.706),
    (2021, 22313.850, 23046.934, 23550.420, 24349.121),
    (2022, 24740.480, 25248.476, 25723.941, 26137.529),
    (2023, 26813.601, 27063.012, 27610.128, 27956.998),
    (2024, 28269.175, 28624.069, 29016.714, 29374.914),
]

# M2, billions, monthly anchors (YYYY-MM: value); geometric interpolation between.
M2_ANCHORS = {
    "1959-01": 286.6, "1959-07": 292.7, "1960-01": 298.2, "1960-07": 301.9,
    "1961-01": 312.4, "1961-07": 322.9, "1962-01": 335.5, "1962-07": 347.6,
    "1963-01": 362.7, "1963-07": 377.4, "1964-01": 393.2, "1964-07": 407.2,
    "1965-01": 424.7, "1965-07": 440.7, "1966-01": 459.2, "1966-07": 468.4,
    "1967-01": 480.2, "1967-07": 501.0, "1968-01": 524.3, "1968-07": 542.9,
    "1969-01": 566.8, "1969-07": 576.7, "1970-01": 589.5, "1970-07": 601.4,
    "1971-01": 632.9, "1971-07": 668.3, "1972-01": 710.3, "1972-07": 749.6,
    "1973-01": 802.3, "1973-07": 828.0, "1974-01": 855.5, "1974-07": 877.1,
    "1975-01": 902.1, "1975-07": 953.8, "1976-01": 1016.2, "1976-07": 1076.6,
    "1977-01": 1152.0, "1977-07": 1211.7, "1978-01": 1270.5, "1978-07": 1318.7,
    "1979-01": 1366.8, "1979-07": 1422.9, "1980-01": 1482.7, "1980-07": 1529.7,
    "1981-01": 1599.8, "1981-07": 1669.9, "1982-01": 1755.5, "1982-07": 1836.5,
    "1983-01": 1952.2, "1983-07": 2072.5, "1984-01": 2188.8, "1984-07": 2269.7,
    "1985-01": 2363.6, "1985-07": 2459.3, "1986-01": 2572.3, "1986-07": 2681.0,
    "1987-01": 2796.8, "1987-07": 2836.9, "1988-01": 2887.7, "1988-07": 2972.6,
    "1989-01": 3059.8, "1989-07": 3089.1, "1990-01": 3172.7, "1990-07": 3245.4,
    "1991-01": 3378.6, "1991-07": 3398.5, "1992-01": 3432.1, "1992-07": 3434.4,
    "1993-01": 3420.1, "1993-07": 3443.6, "1994-01": 3475.9, "1994-07": 3489.8,
    "1995-01": 3490.8, "1995-07": 3554.0, "1996-01": 3651.3, "1996-07": 3724.5,
    "1997-01": 3820.5, "1997-07": 3909.2, "1998-01": 4045.5, "1998-07": 4181.6,
    "1999-01": 4401.5, "1999-07": 4512.6, "2000-01": 4662.9, "2000-07": 4794.7,
    "2001-01": 4975.1, "2001-07": 5180.9, "2002-01": 5437.4, "2002-07": 5587.8,
    "2003-01": 5779.1, "2003-07": 5970.5, "2004-01": 6071.3, "2004-07": 6264.0,
    "2005-01": 6421.4, "2005-07": 6549.2, "2006-01": 6718.8, "2006-07": 6895.5,
    "2007-01": 7085.3, "2007-07": 7289.9, "2008-01": 7507.9, "2008-07": 7775.9,
    "2008-10": 7967.9, "2009-01": 8256.1, "2009-07": 8354.2, "2010-01": 8478.7,
    "2010-07": 8628.5, "2011-01": 8849.1, "2011-07": 9310.5, "2012-01": 9746.2,
    "2012-07": 10057.8, "2013-01": 10441.8, "2013-07": 10698.7, "2014-01": 11063.3,
    "2014-07": 11402.9, "2015-01": 11748.1, "2015-07": 12067.1, "2016-01": 12405.4,
    "2016-07": 12868.2, "2017-01": 13205.8, "2017-07": 13572.9, "2018-01": 13858.1,
    "2018-07": 14100.6, "2019-01": 14452.2, "2019-07": 14893.6, "2020-01": 15330.3,
    "2020-02": 15446.9, "2020-03": 16018.7, "2020-04": 17052.0, "2020-05": 17895.2,
    "2020-06": 18181.3, "2020-07": 18312.8, "2020-08": 18398.7, "2020-09": 18612.1,
    "2020-10": 18758.4, "2020-11": 19037.5, "2020-12": 19187.9, "2021-01": 19403.4,
    "2021-04": 20141.1, "2021-07": 20533.9, "2021-10": 21086.9, "2022-01": 21599.5,
    "2022-04": 21740.3, "2022-07": 21615.1, "2022-10": 21432.4, "2023-01": 21276.5,
    "2023-04": 20935.2, "2023-07": 20899.1, "2023-10": 20819.2, "2024-01": 20865.7,
    "2024-04": 20937.8, "2024-07": 21175.4, "2024-10": 21432.6, "2024-12": 21533.8,
}


def month_index(key: str) -> int:
    y, m = key.split("-")
    return (int(y) - 1959) * 12 + (int(m) - 1)


def build_m2_monthly():
    n_months = (2024 - 1959 + 1) * 12
    anchors = sorted((month_index(k), v) for k, v in M2_ANCHORS.items())
    idx = np.array([a[0] for a in anchors], dtype=float)
    logv = np.log([a[1] for a in anchors])
    months = np.arange(n_months, dtype=float)
    vals = np.exp(np.interp(months, idx, logv))
    dates = []
    for k in range(n_months):
        y, m = 1959 + k // 12, 1 + k % 12
        dates.append(dt.date(y, m, 1))
    return dates, vals


def write_csv(path, name, dates, values):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"DATE,{name}\n")
        for d, v in zip(dates, values):
            fh.write(f"{d.isoformat()},{v:.12g}\n")


def main(outdir="."):
    gdp_dates, gdp_vals = [], []
    for year, *quarters in GDP_QUARTERLY:
        for qi, v in enumerate(quarters):
            gdp_dates.append(dt.date(year, 1 + 3 * qi, 1))
            gdp_vals.append(v)
    write_csv(f"{outdir}/GDP.csv", "GDP", gdp_dates, gdp_vals)

    m2_dates, m2_vals = build_m2_monthly()
    write_csv(f"{outdir}/M2SL.csv", "M2SL", m2_dates, m2_vals)
    print(f"wrote {len(gdp_vals)} GDP quarters, {len(m2_vals)} M2 months")


if __name__ == "__main__":
    import sys
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
