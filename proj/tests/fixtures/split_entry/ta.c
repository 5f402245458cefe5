int function(TEE_Param params[4])
{...
    params[0].value.a = var;
    ...
}
