from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python fallback only
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("ghilb._kernels", ["src/ghilb/_kernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
