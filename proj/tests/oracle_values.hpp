// Generated by tests/oracle/fwm_oracle.py (mpmath, 50 digits). Do not edit.
#pragma once

namespace ringfwm::oracle {

inline constexpr double omega_1558_5nm = 1208631098690313.2995;
inline constexpr double photon_energy_1558_5nm_eV = 0.79553544021323557550;
inline constexpr double fsr_r5_rad_per_s = 24274692955465.587045;
inline constexpr double fsr_r5_hz = 3863437375900.3581044;
inline constexpr double fsr_r5_dlambda_nm = 31.301618014039544593;
inline constexpr double r5_m1_signal_nm = 1590.4431792557576832;
inline constexpr double r5_m1_idler_nm = 1527.8146798178376100;
inline constexpr double enhancement_r5 = 50.505328387935586748;
inline constexpr double stimulated_r5_W = 4.6364517008275895567e-8;
inline constexpr double spontaneous_r5_W = 1.1301402740296561247e-12;
inline constexpr double pair_rate_r5_per_s = 8866708.4069554135227;
inline constexpr double ratio_q7900_ps200uW = 0.000024375111549807156345;
inline constexpr double ratio_q15000_ps200uW = 0.000012837558749565102342;
inline constexpr double char_power_0_8eV_W = 0.00015578462766588088821;
inline constexpr double char_power_1558_5nm_W = 0.00015405070499478122810;
inline constexpr double calibrated_1mW_7dB_W = 0.00044668359215096311856;
inline constexpr double raw_mixed_q_spont_exponent = -0.89652294755450201625;
inline constexpr double raw_mixed_q_stim_exponent = -0.52869726340600268833;
inline constexpr double fixed_q_spont_exponent = -2.0000000000000000000;

}  // namespace ringfwm::oracle
