import sysconfig

from Cython.Build import cythonize
from setuptools import Extension, setup

kernel_ext = Extension(
    "luandri.kernels._native",
    ["src/luandri/kernels/_native.pyx"],
)

# The C boundary links libpython explicitly so the resulting shared object can
# be dlopen()ed by non-Python hosts (which cannot supply interpreter symbols).
capi_ext = Extension(
    "luandri._capi",
    ["src/luandri/capi_src/luandri_capi.c"],
    include_dirs=["src/luandri/include"],
    libraries=["python" + sysconfig.get_config_var("LDVERSION")],
    library_dirs=[sysconfig.get_config_var("LIBDIR")],
)

setup(
    ext_modules=cythonize([kernel_ext], language_level="3") + [capi_ext],
)
