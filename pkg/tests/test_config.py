import json

import pytest

from alphasqkd import utils
from alphasqkd.config import (
    MODE_PRESET,
    MODE_SOUNDNESS,
    MODE_SWEEP,
    SweepConfig,
)
from alphasqkd.presets import (
    PRESETS,
    get_preset,
)


def _write_settings(tmp_path, document):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


class TestExpandRange:
    def test_inclusive(self):
        assert utils.expand_range(0.0, 0.5, 0.1) == [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]

    def test_rounding(self):
        values = utils.expand_range(0.0, 0.5, 0.005)
        assert len(values) == 101
        assert values[3] == 0.015

    def test_single(self):
        assert utils.expand_range(0.2, 0.2, 0.1) == [0.2]


class TestFormatNumber:
    @pytest.mark.parametrize(
        "value, text",
        [(None, ""), ("summary", "summary"), (7, "7"), (0.1, "0.1"), (1 / 3, "0.333333333333")],
    )
    def test_format(self, value, text):
        assert utils.format_number(value) == text


class TestConvertNum:
    @pytest.mark.parametrize("value, expected", [(None, 64), (16, 16), ("16", 16), (" 12 ", 12), ("-3", -3)])
    def test_converted(self, value, expected):
        assert utils.convert_num(value, 64) == expected

    @pytest.mark.parametrize("value", [10.5, "ten", "1e3", True, [16]])
    def test_malformed_kept(self, value):
        assert utils.convert_num(value, 64) is value


class TestSweepConfig:
    def test_defaults_are_valid(self):
        cfg = SweepConfig()
        assert cfg.validate() == []
        assert cfg.alphas() == [0.2]
        assert len(cfg.noise_points()) == 1

    def test_load(self, tmp_path):
        path = _write_settings(
            tmp_path,
            {
                "mode": "sweep",
                "alpha": {"min": 0.1, "max": 0.3, "step": 0.1},
                "noise": {"q_f": 0.001, "q_r": {"min": 0.01, "max": 0.02, "step": 0.01}, "tie_loop": True},
                "grid_points": 16,
                "output": {"path": "out.csv", "format": "csv"},
            },
        )
        cfg = SweepConfig()
        cfg.load_settings_from_json(path)
        assert cfg.mode == MODE_SWEEP
        assert cfg.alphas() == [0.1, 0.2, 0.3]
        assert cfg.grid_points == 16
        assert cfg.output_path == "out.csv"
        points = cfg.noise_points()
        assert [(point.q_f, point.q_r, point.q_x) for point in points] == [(0.001, 0.01, 0.01), (0.001, 0.02, 0.02)]
        assert cfg.validate() == []

    @pytest.mark.parametrize("name", ["grid_points", "refine_passes", "seed", "attacks", "d_e", "workers"])
    def test_malformed_integer_setting(self, tmp_path, name):
        path = _write_settings(tmp_path, {name: 10.5})
        cfg = SweepConfig()
        cfg.load_settings_from_json(path)
        assert getattr(cfg, name) == 10.5
        errors = cfg.validate()
        assert len(errors) == 1
        assert name in errors[0]

    def test_integer_setting_as_text(self, tmp_path):
        cfg = SweepConfig()
        cfg.load_settings_from_json(_write_settings(tmp_path, {"grid_points": "16"}))
        assert cfg.grid_points == 16
        assert cfg.validate() == []

    def test_missing_file(self, tmp_path):
        with pytest.raises(SystemExit):
            SweepConfig().load_settings_from_json(str(tmp_path / "missing.json"))

    def test_malformed_range(self, tmp_path):
        path = _write_settings(tmp_path, {"alpha": {"min": 0.1}})
        with pytest.raises(SystemExit):
            SweepConfig().load_settings_from_json(path)

    def test_noise_order(self):
        cfg = SweepConfig()
        cfg.noise["q_f"] = (0.0, 0.01, 0.01)
        cfg.noise["q_r"] = (0.0, 0.01, 0.01)
        cfg.noise["q_x"] = 0.03
        points = [(point.q_f, point.q_r, point.q_x) for point in cfg.noise_points()]
        assert points == [(0.0, 0.0, 0.03), (0.0, 0.01, 0.03), (0.01, 0.0, 0.03), (0.01, 0.01, 0.03)]

    def test_overrides(self):
        cfg = SweepConfig()
        cfg.apply_overrides(alpha_min=0.1, alpha_max=0.2, alpha_step=0.05, qr=0.02, mode="sweep", workers=1)
        assert cfg.alpha == (0.1, 0.2, 0.05)
        assert cfg.noise["q_r"] == 0.02
        assert cfg.mode == MODE_SWEEP
        assert cfg.workers == 1

    def test_overrides_extend_range(self):
        cfg = SweepConfig()
        cfg.alpha = (0.1, 0.5, 0.1)
        cfg.apply_overrides(alpha_max=0.3)
        assert cfg.alphas() == [0.1, 0.2, 0.3]

    def test_keyrate_needs_single_point(self):
        cfg = SweepConfig()
        cfg.alpha = (0.1, 0.2, 0.1)
        assert len(cfg.validate()) == 1

    @pytest.mark.parametrize(
        "name, value",
        [
            ("grid_points", 4),
            ("symmetry", "lenient"),
            ("output_format", "xml"),
            ("p_override", 0.95),
            ("alpha", 1.5),
            ("mode", "bogus"),
            ("workers", 0),
        ],
    )
    def test_invalid(self, name, value):
        cfg = SweepConfig()
        setattr(cfg, name, value)
        assert cfg.validate()

    def test_noise_out_of_range(self):
        cfg = SweepConfig()
        cfg.noise["q_r"] = 0.7
        assert cfg.validate()

    def test_soundness_needs_even_ancilla(self):
        cfg = SweepConfig()
        cfg.mode = MODE_SOUNDNESS
        cfg.d_e = 3
        assert cfg.validate()

    def test_as_dict_round_trip(self, tmp_path):
        cfg = get_preset("fig3")
        loaded = SweepConfig()
        loaded.load_settings_from_json(_write_settings(tmp_path, cfg.as_dict()))
        assert loaded.as_dict() == cfg.as_dict()


class TestPresets:
    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_valid(self, name):
        assert get_preset(name).validate() == []

    def test_unknown(self):
        assert get_preset("fig4") is None
        cfg = SweepConfig()
        cfg.mode = MODE_PRESET
        cfg.preset = "fig4"
        assert cfg.validate()

    def test_fig3_forward_noise(self):
        points = get_preset("fig3").noise_points()
        assert [point.q_f for point in points] == [0.0001, 0.0003, 0.0005]
        assert all(point.q_x == point.q_r == 0.01 for point in points)
