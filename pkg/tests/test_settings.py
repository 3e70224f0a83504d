from cable_cone.settings import DEBUG_ENV, AppSettings


def test_from_env() -> None:
    assert not AppSettings.from_env({}).debug
    assert AppSettings.from_env({DEBUG_ENV: "1"}).debug
    assert AppSettings.from_env({DEBUG_ENV: " Yes "}).debug
    assert not AppSettings.from_env({DEBUG_ENV: "0"}).debug

    settings = AppSettings()
    assert settings.max_standardize_passes == 64
    assert settings.jobs == 1
