from .. import utils


def test_read_config():
    import tempfile
    import os
    with tempfile.TemporaryDirectory() as tmpdirname:
        path = os.path.join(tmpdirname, 'sweep.cfg')
        with open(path, 'w') as cfgf:
            cfgf.write(
                '# sweep settings\n'
                + 'epsilon-grid = 0,0.1,0.3 ! inline comment\n'
                + '\n'
                + 'gamma=0.2\n'
                + 'opinions_are_expressed = yes\n'
            )
        opts = utils.read_config(path)
    assert (opts == dict(
        epsilon_grid='0,0.1,0.3', gamma='0.2', opinions_are_expressed=True
    ))


def test_read_config_bad_line():
    import tempfile
    import os
    import pytest
    with tempfile.TemporaryDirectory() as tmpdirname:
        path = os.path.join(tmpdirname, 'bad.cfg')
        with open(path, 'w') as cfgf:
            cfgf.write('gamma = 0.2\njust words\n')
        with pytest.raises(ValueError, match=':2:'):
            utils.read_config(path)


def test_resolve_seed(monkeypatch):
    monkeypatch.delenv('OPINIONLAB_SEED', raising=False)
    assert (utils.resolve_seed() == 0)
    monkeypatch.setenv('OPINIONLAB_SEED', '17')
    assert (utils.resolve_seed() == 17)
    assert (utils.resolve_seed(3) == 3)


def test_trial_rng():
    import numpy as np
    a = utils.trial_rng(5, 2).random(10)
    b = utils.trial_rng(5, 2).random(10)
    c = utils.trial_rng(5, 3).random(10)
    assert (np.array_equal(a, b))
    assert (not np.array_equal(a, c))
    assert (isinstance(utils.trial_rng(5).bit_generator, np.random.Philox))


def test_parse_grid():
    import numpy as np
    import pytest
    assert (utils.parse_grid('0,0.1, 0.3') == [0., 0.1, 0.3])
    assert (np.allclose(utils.parse_grid('0:1:5'), [0, .25, .5, .75, 1]))
    with pytest.raises(ValueError):
        utils.parse_grid('')
    with pytest.raises(ValueError):
        utils.parse_grid('0:1')


def test_clamp():
    import numpy as np
    out = utils.clamp([-3, 0.5, 2])
    assert (np.array_equal(out, [-1, 0.5, 1]))


def test_check_outpath():
    import tempfile
    import os
    import pytest
    with tempfile.TemporaryDirectory() as tmpdirname:
        path = os.path.join(tmpdirname, 'out.csv')
        utils.check_outpath(path, False)
        with open(path, 'w') as outf:
            outf.write('x\n')
        with pytest.raises(IOError):
            utils.check_outpath(path, False)
        utils.check_outpath(path, True)
        assert (not os.path.exists(path))


def test_convergence_error():
    err = utils.ConvergenceError('stuck', iterations=7, gap=0.5)
    assert (isinstance(err, RuntimeError))
    assert (err.iterations == 7 and err.gap == 0.5)
