# Plotted (rho, value) points of the published simulation figures, copied
# digit for digit and in the original point order.

UNCAP_PARETO_A_100 = (
    (1.0, -2.93302149e-04),
    (0.95, 5.09952365e-02),
    (0.9, 9.99098654e-02),
    (0.85, 1.49582515e-01),
    (0.8, 1.98615044e-01),
    (0.75, 2.50672368e-01),
    (0.7, 2.98396679e-01),
    (0.65, 3.53297989e-01),
    (0.6, 4.01534588e-01),
    (0.55, 4.57538886e-01),
    (0.5, 4.99008265e-01),
    (0.45, 5.45191603e-01),
    (0.4, 5.98321275e-01),
    (0.35, 6.47960081e-01),
    (0.3, 7.02168843e-01),
    (0.25, 7.55720725e-01),
    (0.2, 7.95792734e-01),
    (0.15, 8.54086077e-01),
    (0.1, 8.94396966e-01),
    (0.05, 9.51871036e-01),
    )

UNCAP_PARETO_B2_100 = (
    (1.0, 0.89690713),
    (0.95, 0.81784664),
    (0.9, 0.75306999),
    (0.85, 0.6662142),
    (0.8, 0.56971335),
    (0.75, 0.5062449),
    (0.7, 0.42701118),
    (0.65, 0.37056716),
    (0.6, 0.33254467),
    (0.55, 0.27271786),
    (0.5, 0.1952013),
    (0.45, 0.15757578),
    (0.4, 0.13598216),
    (0.35, 0.09159228),
    (0.3, 0.06525824),
    (0.25, 0.04419015),
    (0.2, 0.03481124),
    (0.15, 0.01137209),
    (0.1, 0.00792367),
    (0.05, 0.00144225),
    (0.0, 0.0),
    )

UNCAP_PARETO_B2_1000 = (
    (1.0, 1.00042972),
    (0.95, 0.86929956),
    (0.9, 0.81022888),
    (0.85, 0.68339857),
    (0.8, 0.6331555),
    (0.75, 0.5168909),
    (0.7, 0.45079333),
    (0.65, 0.38950597),
    (0.6, 0.3171402),
    (0.55, 0.24899111),
    (0.5, 0.19162077),
    (0.45, 0.16015799),
    (0.4, 0.11272561),
    (0.35, 0.08256006),
    (0.3, 0.0621062),
    (0.25, 0.04186832),
    (0.2, 0.0264023),
    (0.15, 0.00969704),
    (0.1, 0.00462515),
    (0.05, 0.00148879),
    (0.0, 0.0),
    )

UNCAP_PARETO_B5_1000 = (
    (1.0, 0.732106671),
    (0.95, 0.653780397),
    (0.9, 0.589645711),
    (0.85, 0.507109174),
    (0.8, 0.441454728),
    (0.75, 0.368630563),
    (0.7, 0.298770984),
    (0.65, 0.232391479),
    (0.6, 0.175390145),
    (0.55, 0.128744234),
    (0.5, 0.0833586737),
    (0.45, 0.0535664681),
    (0.4, 0.0305106172),
    (0.35, 0.0158867737),
    (0.3, 0.00821244493),
    (0.25, 0.00323748336),
    (0.2, 0.00192144243),
    (0.15, 0.000558209775),
    (0.1, 0.000226684904),
    (0.05, 0.0000395188678),
    (0.0, 0.0),
    )

UNCAP_PARETO_B5_10000 = (
    (1.0, 0.829486761),
    (0.95, 0.741074402),
    (0.9, 0.663934788),
    (0.85, 0.571881075),
    (0.8, 0.505117732),
    (0.75, 0.415396203),
    (0.7, 0.333201897),
    (0.65, 0.261143853),
    (0.6, 0.185385155),
    (0.55, 0.128780794),
    (0.5, 0.0758596986),
    (0.45, 0.0423597606),
    (0.4, 0.0204742542),
    (0.35, 0.0102602119),
    (0.3, 0.00392406547),
    (0.25, 0.00174112803),
    (0.2, 0.000784893462),
    (0.15, 0.000512100166),
    (0.1, 0.00017462362),
    (0.05, 0.0000174157316),
    (0.0, 0.0),
    )

UNCAP_PARETO_B5_100000 = (
    (1.0, 0.914340017),
    (0.95, 0.810971469),
    (0.9, 0.710548974),
    (0.85, 0.657970457),
    (0.8, 0.554920824),
    (0.75, 0.432900359),
    (0.7, 0.366122161),
    (0.65, 0.270214152),
    (0.6, 0.201562295),
    (0.55, 0.144154452),
    (0.5, 0.0698379841),
    (0.45, 0.0404287175),
    (0.4, 0.0198307645),
    (0.35, 0.00713391705),
    (0.3, 0.00560248422),
    (0.25, 0.00129625459),
    (0.2, 0.000143689369),
    (0.15, 0.000162816596),
    (0.1, 0.0000279340122),
    (0.05, 0.00000100104162),
    (0.0, 0.0),
    )

UNCAP_EXP_A_100 = (
    (1.0, -0.00190615),
    (0.95, 0.04995942),
    (0.9, 0.09830729),
    (0.85, 0.14858004),
    (0.8, 0.20015517),
    (0.75, 0.24885637),
    (0.7, 0.29960095),
    (0.65, 0.35104143),
    (0.6, 0.40020136),
    (0.55, 0.45075586),
    (0.5, 0.50131353),
    (0.45, 0.54973624),
    (0.4, 0.60128942),
    (0.35, 0.65078516),
    (0.3, 0.70096405),
    (0.25, 0.7506789),
    (0.2, 0.8002238),
    (0.15, 0.8509942),
    (0.1, 0.90082787),
    (0.05, 0.94994553),
    (0.0, 1.00025182),
    )

UNCAP_EXP_B_100 = (
    (1.0, 0.999453406),
    (0.95, 0.900112092),
    (0.9, 0.80271497),
    (0.85, 0.701116976),
    (0.8, 0.607385277),
    (0.75, 0.510245449),
    (0.7, 0.421841598),
    (0.65, 0.334830968),
    (0.6, 0.255098849),
    (0.55, 0.178359727),
    (0.5, 0.122692528),
    (0.45, 0.0819329963),
    (0.4, 0.0516672957),
    (0.35, 0.0298902478),
    (0.3, 0.0189630175),
    (0.25, 0.010985955),
    (0.2, 0.00613571737),
    (0.15, 0.00298504775),
    (0.1, 0.00127394897),
    (0.05, 0.000305261687),
    (0.0, 0.0),
    )

CAP_PARETO_A_100 = (
    (0.0, -0.00530766),
    (0.05, -0.00538989),
    (0.1, 0.01463514),
    (0.15, 0.00370928),
    (0.2, -0.00302006),
    (0.25, 0.00808066),
    (0.3, 0.00173158),
    (0.35, -0.00485731),
    (0.4, 0.00817953),
    (0.45, 0.00295046),
    (0.5, 0.0103502),
    (0.55, 0.00822897),
    (0.6, -0.00614228),
    (0.65, -0.01009817),
    (0.7, -0.00805731),
    (0.75, 0.00298706),
    (0.8, -0.00340842),
    (0.85, 0.00109466),
    (0.9, 0.01330453),
    (0.95, 0.00063326),
    (1.0, -0.02474926),
    )

CAP_PARETO_B_100 = (
    (1.0, 1.00930667),
    (0.95, 0.948535206),
    (0.9, 0.897736643),
    (0.85, 0.853079244),
    (0.8, 0.798466122),
    (0.75, 0.749827047),
    (0.7, 0.698130959),
    (0.65, 0.657011287),
    (0.6, 0.596395425),
    (0.55, 0.542547577),
    (0.5, 0.496784759),
    (0.45, 0.444685165),
    (0.4, 0.389544604),
    (0.35, 0.338717507),
    (0.3, 0.287731953),
    (0.25, 0.237352512),
    (0.2, 0.186049693),
    (0.15, 0.135002175),
    (0.1, 0.0836456996),
    (0.05, 0.037504978),
    (0.0, -0.000111205485),
    )

CAP_EXP_A_100 = (
    (0.0, 0.00020165),
    (0.05, 0.00379704),
    (0.1, 0.00210067),
    (0.15, -0.0020132),
    (0.2, -0.00080243),
    (0.25, 0.00064667),
    (0.3, -0.0012597),
    (0.35, -0.00898513),
    (0.4, 0.00085106),
    (0.45, 0.00096597),
    (0.5, -0.00390486),
    (0.55, -0.00166136),
    (0.6, 0.00095535),
    (0.65, -0.00478673),
    (0.7, -0.00159674),
    (0.75, 0.00269692),
    (0.8, 0.00417145),
    (0.85, 0.00577392),
    (0.9, -0.00128173),
    (0.95, 0.0010885),
    (1.0, 0.00139009),
    )

CAP_EXP_B_100 = (
    (1.0, 1.00832611),
    (0.95, 0.956725549),
    (0.9, 0.906618072),
    (0.85, 0.854407927),
    (0.8, 0.801579375),
    (0.75, 0.746531),
    (0.7, 0.693303044),
    (0.65, 0.639508339),
    (0.6, 0.58352241),
    (0.55, 0.528969294),
    (0.5, 0.472651566),
    (0.45, 0.417431005),
    (0.4, 0.36082915),
    (0.35, 0.307180421),
    (0.3, 0.252822429),
    (0.25, 0.200015922),
    (0.2, 0.148832465),
    (0.15, 0.101418562),
    (0.1, 0.0608998085),
    (0.05, 0.0229079904),
    (0.0, -0.000711421131),
    )

BOUNDED_A_100 = (
    (0.0, 0.0021),
    (0.05, 0.0001),
    (0.1, -0.0013),
    (0.15, 0.0023),
    (0.2, -0.0008),
    (0.25, 0.0012),
    (0.3, -0.0017),
    (0.35, 0.0005),
    (0.4, -0.0001),
    (0.45, 0.0018),
    (0.5, -0.0012),
    (0.55, 0.0000),
    (0.6, 0.0011),
    (0.65, -0.0005),
    (0.7, -0.0022),
    (0.75, 0.0030),
    (0.8, 0.0010),
    (0.85, -0.0004),
    (0.9, 0.0008),
    (0.95, 0.0013),
    (1.0, -0.0007),
    )

BOUNDED_B_100 = (
    (0.0, 0.0),
    (0.05, 0.0167491130),
    (0.1, 0.0382191057),
    (0.15, 0.0606398715),
    (0.2, 0.0836622028),
    (0.25, 0.107078252),
    (0.3, 0.130830241),
    (0.35, 0.154872588),
    (0.4, 0.178933286),
    (0.45, 0.203274641),
    (0.5, 0.227579114),
    (0.55, 0.252625491),
    (0.6, 0.277319161),
    (0.65, 0.30237277),
    (0.7, 0.327878222),
    (0.75, 0.352853372),
    (0.8, 0.378456069),
    (0.85, 0.403718108),
    (0.9, 0.431053778),
    (0.95, 0.45829585),
    (1.0, 0.485731368),
    )
