package com.example.shop;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Test;

public class CheckoutTest {
    private final Greeter greeter = new Greeter();
    private final RegionPolicy policy = new RegionPolicy();

    @Test
    public void greetsAndTaxesEuropeans() {
        Customer customer = european("Fay");
        assertEquals("Hi Fay", greeter.greet(customer));
        assertEquals(20, policy.taxRate(customer));
    }

    @Test
    public void taxesEuropeansOnly() {
        assertEquals(20, policy.taxRate(european_nostub2("Gus")));
    }

    @Test
    public void welcomesPremiumEuropeans() {
        Customer customer = premiumEuropean_nostub1("Hal");
        assertEquals("Dear Hal", greeter.greet(customer));
    }

    private Customer european(String name) {
        Customer customer = named(name);
        when(customer.getRegion()).thenReturn("EU");
        when(customer.isPremium()).thenReturn(false);
        return customer;
    }

    private Customer european_nostub1(String name) {
        Customer customer = named(name);
        return customer;
    }

    private Customer european_nostub2(String name) {
        Customer customer = named_nostub1(name);
        when(customer.getRegion()).thenReturn("EU");
        return customer;
    }

    private Customer premiumEuropean_nostub1(String name) {
        Customer customer = european_nostub1(name);
        when(customer.isPremium()).thenReturn(true);
        return customer;
    }

    private Customer named(String name) {
        Customer customer = mock(Customer.class);
        when(customer.getName()).thenReturn(name);
        return customer;
    }

    private Customer named_nostub1(String name) {
        Customer customer = mock(Customer.class);
        return customer;
    }
}
