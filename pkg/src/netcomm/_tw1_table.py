"""Frozen tabulation of the Tracy-Widom (beta=1) CDF on [-6, 5].

Generated by tools/make_tw1_table.py (Painleve II / Hastings-McLeod
representation).  Do not edit by hand; rerun the generator instead.
"""

import numpy as np

GRID_LO = -6.0
GRID_HI = 5.0
GRID_STEP = 0.05

# moments of the tabulated law, integrated from the grid below
TW1_MEAN = -1.206533757849
TW1_SD = 1.267982990866

TW1_CDF_VALUES = np.array([
    2.711689737163e-06, 3.540143186395e-06, 4.603904836310e-06, 5.964405109397e-06,
    7.697580665474e-06, 9.896897550890e-06, 1.267690687517e-05, 1.617740512812e-05,
    2.056827654946e-05, 2.605509973756e-05, 3.288560470121e-05, 4.135706955757e-05,
    5.182474777829e-05, 6.471141698005e-05, 8.051813843029e-05, 9.983631237026e-05,
    1.233611076267e-04, 1.519063344830e-04, 1.864208171310e-04, 2.280063059742e-04,
    2.779369504216e-04, 3.376803294506e-04, 4.089200100917e-04, 4.935795731354e-04,
    5.938480109087e-04, 7.122063642046e-04, 8.514554247177e-04, 1.014744286173e-03,
    1.205599482360e-03, 1.427954404253e-03, 1.686178642221e-03, 1.985106853965e-03,
    2.330066715366e-03, 2.726905471093e-03, 3.182014565697e-03, 3.702351805429e-03,
    4.295460477178e-03, 4.969484835116e-03, 5.733181358829e-03, 6.595925189956e-03,
    7.567711168527e-03, 8.659148915860e-03, 9.881451448611e-03, 1.124641685847e-02,
    1.276640265402e-02, 1.445429243527e-02, 1.632345465627e-02, 1.838769332667e-02,
    2.066119060747e-02, 2.315844136824e-02, 2.589417989078e-02, 2.888329902639e-02,
    3.214076223733e-02, 3.568150907639e-02, 3.952035477915e-02, 4.367188475887e-02,
    4.815034490219e-02, 5.296952866172e-02, 5.814266202882e-02, 6.368228754186e-02,
    6.960014854306e-02, 7.590707493722e-02, 8.261287172766e-02, 8.972621160865e-02,
    9.725453287752e-02, 1.052039438946e-01, 1.135791352657e-01, 1.223833008481e-01,
    1.316180685949e-01, 1.412834421429e-01, 1.513777539344e-01, 1.618976305293e-01,
    1.728379706237e-01, 1.841919361429e-01, 1.959509566213e-01, 2.081047469270e-01,
    2.206413382321e-01, 2.335471219740e-01, 2.468069064069e-01, 2.604039851975e-01,
    2.743202173890e-01, 2.885361179325e-01, 3.030309578804e-01, 3.177828732362e-01,
    3.327689813804e-01, 3.479655039239e-01, 3.633478947959e-01, 3.788909723418e-01,
    3.945690541905e-01, 4.103560936534e-01, 4.262258164359e-01, 4.421518564699e-01,
    4.581078897257e-01, 4.740677649156e-01, 4.900056300720e-01, 5.058960540599e-01,
    5.217141421707e-01, 5.374356450351e-01, 5.530370601910e-01, 5.684957257430e-01,
    5.837899056515e-01, 5.988988662905e-01, 6.138029440191e-01, 6.284836036027e-01,
    6.429234874218e-01, 6.571064554963e-01, 6.710176164323e-01, 6.846433494833e-01,
    6.979713179914e-01, 7.109904745308e-01, 7.236910581380e-01, 7.360645840699e-01,
    7.481038265560e-01, 7.598027950581e-01, 7.711567045786e-01, 7.821619405630e-01,
    7.928160189674e-01, 8.031175420683e-01, 8.130661505764e-01, 8.226624726219e-01,
    8.319080701705e-01, 8.408053833955e-01, 8.493576735277e-01, 8.575689646751e-01,
    8.654439850742e-01, 8.729881082093e-01, 8.802072942058e-01, 8.871080318659e-01,
    8.936972816895e-01, 8.999824201804e-01, 9.059711857119e-01, 9.116716261901e-01,
    9.170920487142e-01, 9.222409714130e-01, 9.271270775974e-01, 9.317591723381e-01,
    9.361461415597e-01, 9.402969137081e-01, 9.442204240223e-01, 9.479255814287e-01,
    9.514212380502e-01, 9.547161612964e-01, 9.578190085012e-01, 9.607383040475e-01,
    9.634824189035e-01, 9.660595524979e-01, 9.684777168385e-01, 9.707447227753e-01,
    9.728681683078e-01, 9.748554288243e-01, 9.767136491620e-01, 9.784497373742e-01,
    9.800703600883e-01, 9.815819393397e-01, 9.829906507675e-01, 9.843024230589e-01,
    9.855229385326e-01, 9.866576347527e-01, 9.877117070727e-01, 9.886901120056e-01,
    9.895975713284e-01, 9.904385768289e-01, 9.912173956091e-01, 9.919380758642e-01,
    9.926044530615e-01, 9.932201564486e-01, 9.937886158253e-01, 9.943130685174e-01,
    9.947965664980e-01, 9.952419836049e-01, 9.956520228063e-01, 9.960292234758e-01,
    9.963759686360e-01, 9.966944921389e-01, 9.969868857534e-01, 9.972551061334e-01,
    9.975009816443e-01, 9.977262190281e-01, 9.979324098916e-01, 9.981210370035e-01,
    9.982934803898e-01, 9.984510232185e-01, 9.985948574674e-01, 9.987260893706e-01,
    9.988457446406e-01, 9.989547734650e-01, 9.990540552780e-01, 9.991444033079e-01,
    9.992265689040e-01, 9.993012456455e-01, 9.993690732363e-01, 9.994306411935e-01,
    9.994864923306e-01, 9.995371260466e-01, 9.995830014234e-01, 9.996245401403e-01,
    9.996621292126e-01, 9.996961235605e-01, 9.997268484170e-01, 9.997546015799e-01,
    9.997796555177e-01, 9.998022593351e-01, 9.998226406049e-01, 9.998410070749e-01,
    9.998575482547e-01, 9.998724368912e-01, 9.998858303365e-01, 9.998978718176e-01,
    9.999086916113e-01, 9.999184081316e-01, 9.999271289344e-01, 9.999349516459e-01,
    9.999419648176e-01, 9.999482487155e-01, 9.999538760459e-01, 9.999589126230e-01,
    9.999634179826e-01, 9.999674459455e-01, 9.999710451336e-01, 9.999742594441e-01,
    9.999771284825e-01,
])

TW1_GRID = GRID_LO + GRID_STEP * np.arange(len(TW1_CDF_VALUES))

