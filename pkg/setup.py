from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python fallback only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("chowlab._core_ext", ["src/chowlab/_core_ext.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
